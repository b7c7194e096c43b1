use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wildcover::checks::{self, SuiteConfig};
use wildcover::covertorus::CoverTorusGroup;
use wildcover::coxeter::AffineWeyl;
use wildcover::imhecke::{self, HeckeAlgebra, HeckeTrials, LaurentPoly};
use wildcover::padic::{hilbert, FieldSpec, PadicElement, SquareClassSpace};
use wildcover::pseudospherical as ps;
use wildcover::report::{all_pass, CheckResult};
use wildcover::rootdata::{CartanType, RootDatum};

#[derive(Parser)]
#[command(name = "wildcover", version, about = "Covering tori, 2-adic Hilbert symbols and Iwahori-Matsumoto algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for every randomized check; echoed in the output.
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// 2-adic fields: Hilbert symbols, square classes, the integral radical.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Root data and the parity lattice.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Extended affine Weyl group.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Covering torus of the integral torus.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Pseudo-spherical representations.
    #[command(subcommand)]
    Reps(RepsCmd),
    /// Iwahori-Matsumoto algebra and the finite Iwahori-Hecke model.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Runs every registered verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Restrict to one suite of the registry.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long, default_value_t = 1)]
    f: usize,
    /// Eisenstein coefficients c0,c1,...,c_{e-1} of y^e + ... + c0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eisenstein: Option<Vec<i64>>,
}

impl FieldArgs {
    fn space(&self) -> anyhow::Result<SquareClassSpace> {
        let k = FieldSpec::new(self.e, self.f, self.eisenstein.as_deref())?;
        Ok(SquareClassSpace::new(k)?)
    }
}

#[derive(Args)]
struct RootArgs {
    #[arg(long = "type", value_parser = parse_type)]
    ty: CartanType,
    #[arg(long)]
    rank: usize,
}

impl RootArgs {
    fn datum(&self) -> anyhow::Result<RootDatum> {
        Ok(RootDatum::new(self.ty, self.rank)?)
    }
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse().map_err(|e: wildcover::Error| e.to_string())
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Hilbert symbol (A, B). Elements are integers over Q_2, or
    /// {"val": m, "unit_digits": [[..], ..]} in general.
    Hilbert {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "norm")]
        method: String,
    },
    /// Representatives of F^×/F^×2 and the unit classes.
    SquareClasses(FieldArgs),
    /// The radical R of the Hilbert symbol on units and its generator.
    Radical(FieldArgs),
    /// Which of the three decomposition cases O^×/R falls into.
    UnitDecomposition(FieldArgs),
}

#[derive(Subcommand)]
enum RootsCmd {
    /// The group Ỹ/2Y, the index [Y:Ỹ] and the parity diagrams.
    LatticeTable(RootArgs),
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Elements up to the given ℓ̃ with their lengths and reduced words.
    Lengths {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// The length-zero subgroup and its action on the affine diagram.
    Omega(RootArgs),
}

#[derive(Args)]
struct TorusArgs {
    #[command(flatten)]
    root: RootArgs,
    #[command(flatten)]
    field: FieldArgs,
}

impl TorusArgs {
    fn build(&self) -> anyhow::Result<(SquareClassSpace, CoverTorusGroup)> {
        let space = self.field.space()?;
        let g = CoverTorusGroup::new(&space, self.root.datum()?)?;
        Ok((space, g))
    }
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Order of the covering torus.
    Order(TorusArgs),
    /// Center of the covering torus.
    Center(TorusArgs),
    /// Group law, Weyl automorphisms and factorization checks.
    Verify(TorusArgs),
}

#[derive(Subcommand)]
enum RepsCmd {
    /// Dimension and number of pseudo-spherical representations.
    Table2(TorusArgs),
    /// Weyl invariance and tensor construction; branching and X-identities where defined.
    Verify(TorusArgs),
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Relations of the generic algebra on random basis elements.
    Verify {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Negative control: use T_s^2 = (q-2) T_s + q, which must fail.
        #[arg(long)]
        corrupt_quadratic: bool,
    },
    /// Brute-force Iwahori-Hecke algebra of a finite group.
    FiniteIwahori {
        #[arg(long, default_value = "sl3f2")]
        model: String,
    },
}

/// What a command produced: a data document or a list of checks.
enum Output {
    Data { value: Value, table: String },
    Checks(Vec<CheckResult>),
}

fn parse_element(k: &FieldSpec, s: &str) -> anyhow::Result<PadicElement> {
    let v: Value = serde_json::from_str(s).with_context(|| format!("cannot parse element `{s}`"))?;
    if let Some(n) = v.as_i64() {
        if n == 0 {
            bail!("zero has no Hilbert symbol");
        }
        return Ok(k.from_int(n));
    }
    let val = v["val"].as_i64().context("element needs an integer `val`")?;
    let digits: Vec<Vec<u8>> = serde_json::from_value(v["unit_digits"].clone())
        .context("`unit_digits` must be a list of 0/1 lists")?;
    Ok(k.from_digits(val, &digits)?)
}

fn table_of(rows: &[Vec<String>]) -> String {
    let n = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n)
        .map(|i| rows.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn run_field(cmd: FieldCmd) -> anyhow::Result<Output> {
    Ok(match cmd {
        FieldCmd::Hilbert { field, a, b, method } => {
            let space = field.space()?;
            let k = space.field();
            let m = hilbert::method(&method)?;
            let (x, y) = (parse_element(k, &a)?, parse_element(k, &b)?);
            let s = m.symbol(k, k.class_of(&x)?, k.class_of(&y)?)?;
            Output::Data {
                value: json!({"field": k.summary(), "method": method, "a": a, "b": b, "symbol": s}),
                table: format!("({a}, {b}) = {s}\n"),
            }
        }
        FieldCmd::SquareClasses(field) => {
            let space = field.space()?;
            let k = space.field();
            let classes: Vec<Value> = k
                .all_classes()
                .map(|c| {
                    json!({
                        "class": c.0,
                        "label": space.class_label(c),
                        "parity": k.parity(c),
                        "coords": space.coords(c),
                        "radical": c == space.radical_class(),
                    })
                })
                .collect();
            let mut rows = vec![vec!["class".into(), "label".into(), "parity".into(), "coords".into()]];
            for c in &classes {
                rows.push(vec![
                    c["class"].to_string(),
                    c["label"].to_string(),
                    c["parity"].to_string(),
                    format!("{:0w$b}", c["coords"].as_u64().unwrap_or(0), w = space.dim()),
                ]);
            }
            Output::Data {
                value: json!({
                    "field": k.summary(),
                    "count": classes.len(),
                    "basis": space.basis().iter().map(|c| space.class_label(*c)).collect::<Vec<_>>(),
                    "classes": classes,
                }),
                table: table_of(&rows),
            }
        }
        FieldCmd::Radical(field) => Output::Checks(field.space()?.radical_report()?),
        FieldCmd::UnitDecomposition(field) => {
            let space = field.space()?;
            let d = space.decomposition();
            let table = format!(
                "case {}  dim {}  k {}  l {}  -1 at {:b}\n",
                serde_json::to_value(d.case)?.as_str().unwrap_or("?"),
                d.dim,
                d.k(),
                d.l(),
                d.minus_one
            );
            Output::Data {
                value: json!({"field": space.field().summary(), "decomposition": d}),
                table,
            }
        }
    })
}

fn run_weyl(cmd: WeylCmd) -> anyhow::Result<Output> {
    Ok(match cmd {
        WeylCmd::Lengths { root, max_len } => {
            let g = AffineWeyl::new(root.datum()?)?;
            let mut rows = vec![vec![
                "translation".into(),
                "finite".into(),
                "l~".into(),
                "l2".into(),
                "omega".into(),
                "word".into(),
            ]];
            let mut items = Vec::new();
            for x in g.elements_by_length(max_len).iter().flatten() {
                let s = g.summary(x)?;
                rows.push(vec![
                    format!("{:?}", s.translation),
                    s.finite_word.clone(),
                    s.length_tilde.to_string(),
                    s.length_two.to_string(),
                    s.omega.to_string(),
                    s.word.clone(),
                ]);
                items.push(s);
            }
            Output::Data {
                value: json!({"type": g.root_datum().name(), "max_len": max_len, "count": items.len(), "elements": items}),
                table: table_of(&rows),
            }
        }
        WeylCmd::Omega(root) => {
            let g = AffineWeyl::new(root.datum()?)?;
            let om = g.omega_summaries();
            let mut rows = vec![vec!["class".into(), "translation".into(), "finite".into(), "nodes".into()]];
            for o in &om {
                rows.push(vec![
                    o.class.iter().map(|c| if *c == 1 { 'o' } else { '*' }).collect(),
                    format!("{:?}", o.translation),
                    o.finite_word.clone(),
                    o.nodes.iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(" "),
                ]);
            }
            Output::Data {
                value: json!({"type": g.root_datum().name(), "omega": om}),
                table: table_of(&rows),
            }
        }
    })
}

fn run_torus(cmd: TorusCmd, seed: u64) -> anyhow::Result<Output> {
    Ok(match cmd {
        TorusCmd::Order(args) => {
            let (space, g) = args.build()?;
            Output::Data {
                value: json!({"type": g.root_datum().name(), "field": space.field().summary(), "order": g.order()}),
                table: format!("{} over e={} f={}: order {}\n", g.root_datum().name(), args.field.e, args.field.f, g.order()),
            }
        }
        TorusCmd::Center(args) => {
            let (space, g) = args.build()?;
            let center = g.center()?;
            let views: Vec<_> = center.iter().map(|x| g.view(x)).collect();
            let mut rows = vec![vec!["sign".into(), "coords".into()]];
            for v in &views {
                rows.push(vec![v.sign.to_string(), format!("{:?}", v.coords)]);
            }
            Output::Data {
                value: json!({
                    "type": g.root_datum().name(),
                    "field": space.field().summary(),
                    "order": center.len(),
                    "elements": views,
                }),
                table: table_of(&rows),
            }
        }
        TorusCmd::Verify(args) => {
            let (space, g) = args.build()?;
            let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
            Output::Checks(checks::torus_results(&g, space.field().ef(), &cfg)?)
        }
    })
}

fn run_reps(cmd: RepsCmd) -> anyhow::Result<Output> {
    Ok(match cmd {
        RepsCmd::Table2(args) => {
            let (_, g) = args.build()?;
            let reps = ps::all_genuine_reps(&g)?;
            let row = ps::table2_row(&g, &reps, args.field.e, args.field.f);
            let table = table_of(&[
                vec!["type".into(), "e".into(), "f".into(), "|G|".into(), "dim".into(), "count".into()],
                vec![
                    row.name.clone(),
                    row.e.to_string(),
                    row.f.to_string(),
                    row.group_order.to_string(),
                    format!("{:?}", row.dims),
                    row.count.to_string(),
                ],
            ]);
            Output::Data { value: serde_json::to_value(&row)?, table }
        }
        RepsCmd::Verify(args) => {
            let (space, g) = args.build()?;
            let reps = ps::all_genuine_reps(&g)?;
            let mut out = checks::rep_results(&g, &reps, args.field.e, args.field.f)?;
            out.extend(checks::x_results(&space, &g, &reps)?);
            let case = (args.root.ty, args.root.rank);
            if checks::BRANCH_CASES.contains(&case) {
                out.push(checks::branching_result(&space, case.0, case.1)?);
            }
            Output::Checks(out)
        }
    })
}

fn run_hecke(cmd: HeckeCmd, seed: u64) -> anyhow::Result<Output> {
    Ok(match cmd {
        HeckeCmd::Verify { root, trials, max_len, corrupt_quadratic } => {
            let g = AffineWeyl::new(root.datum()?)?;
            let alg = if corrupt_quadratic {
                HeckeAlgebra::with_quadratic(g, LaurentPoly::from_terms(&[(1, 1), (0, -2)]), LaurentPoly::q())
            } else {
                HeckeAlgebra::new(g)
            };
            Output::Checks(imhecke::verify_relations(&alg, HeckeTrials { trials, seed, max_len })?)
        }
        HeckeCmd::FiniteIwahori { model } => {
            if model != "sl3f2" {
                bail!("unknown finite model `{model}` (available: sl3f2)");
            }
            let a2 = HeckeAlgebra::new(AffineWeyl::new(RootDatum::new(CartanType::A, 2)?)?);
            Output::Checks(imhecke::sl3f2::verify(&a2)?)
        }
    })
}

fn run(command: Command, seed: u64) -> anyhow::Result<Output> {
    match command {
        Command::Field(c) => run_field(c),
        Command::Roots(RootsCmd::LatticeTable(root)) => {
            let row = root.datum()?.lattice_row();
            let mut table = format!("{}  Ytilde/2Y = {}  [Y:Ytilde] = {}\n", row.name, row.quotient, row.index);
            for d in &row.diagrams {
                let _ = writeln!(table, "  {d}");
            }
            Ok(Output::Data { value: serde_json::to_value(&row)?, table })
        }
        Command::Weyl(c) => run_weyl(c),
        Command::Torus(c) => run_torus(c, seed),
        Command::Reps(c) => run_reps(c),
        Command::Hecke(c) => run_hecke(c, seed),
        Command::VerifyAll { trials, only } => {
            let cfg = SuiteConfig { seed, hecke_trials: trials, ..SuiteConfig::default() };
            let results = match only {
                Some(name) => checks::check(&name)?.run(&cfg)?,
                None => checks::run_all(&cfg),
            };
            Ok(Output::Checks(results))
        }
    }
}

fn emit(out: Output, format: Format, seed: u64) -> bool {
    match out {
        Output::Data { mut value, table } => {
            match format {
                Format::Json => {
                    if let Some(m) = value.as_object_mut() {
                        m.insert("seed".into(), json!(seed));
                    }
                    println!("{}", serde_json::to_string_pretty(&value).unwrap_or_default());
                }
                Format::Table => print!("{table}"),
            }
            true
        }
        Output::Checks(mut results) => {
            for r in &mut results {
                if let Some(m) = r.params.as_object_mut() {
                    m.entry("seed").or_insert(json!(seed));
                }
            }
            let ok = all_pass(&results);
            let failed = results.iter().filter(|r| !r.pass).count();
            match format {
                Format::Json => {
                    for r in &results {
                        println!("{}", serde_json::to_string(r).unwrap_or_default());
                    }
                }
                Format::Table => {
                    for r in &results {
                        let tag = if r.pass { "PASS" } else { "FAIL" };
                        print!("{tag}  {:<34} {}", r.check, r.params);
                        if !r.pass {
                            print!("  expected {} actual {}", r.expected, r.actual);
                        }
                        println!();
                    }
                    println!("{} checks, {failed} failed, seed {seed}", results.len());
                }
            }
            ok
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (format, seed) = (cli.format, cli.seed);
    match run(cli.command, seed) {
        Ok(out) => {
            if emit(out, format, seed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
