mod names;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use psolv::catalog::{default_catalog, GroupRecipe};
use psolv::driver::{run_catalog, RunOptions};
use psolv::error::{Error, Result};
use psolv::format::parse_group;
use psolv::group::{Limits, PermGroup};
use psolv::pf::{
    check_prop1, describe_filtration, pf_embedded_search, verify_potent_filtration, EkrContext, Filtration,
    SearchOutcome,
};
use psolv::report::{emit_report, OutputFormat, Report, ReportDocument};
use psolv::series::{derived_series, exponent, lower_central_series, o_p, o_pprime, sylow, upper_p_series};
use psolv::theorems::{
    check_o24_inclusion, question7_scan, verify_lemma8, verify_linear_action, verify_main, verify_prop3,
    verify_prop4, verify_theorem6,
};
use psolv::verdict::{order_value, Verdict};

#[derive(Parser, Debug)]
#[command(name = "psolv", version)]
#[command(about = "Subgroup series, p-length and potent filtrations of permutation groups")]
#[command(after_help = "EXAMPLES:
    psolv analyze --recipe symmetric:4 --p 2
    psolv verify lemma8 --recipe symmetric:4 --p 2 --normal V4 --l 1
    psolv pf search --recipe dihedral:4 --p 2 --normal G --l 1
    psolv catalog run --p 2 --seed 7 --format json

EXIT STATUS:
    0  every verdict consistent
    2  a verdict has a true hypothesis and a false conclusion
    1  usage or runtime error")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, series, Sylow subgroup, cores and p-length
    Analyze(Common),
    /// Table of E_{k,r} for the Sylow p-subgroup
    Ekr(EkrArgs),
    /// Potent filtrations
    #[command(subcommand)]
    Pf(PfCommand),
    /// Check one statement on one group
    Verify(VerifyArgs),
    /// Empirical scans
    #[command(subcommand)]
    Scan(ScanCommand),
    /// The built-in group catalog
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Text,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Structured,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    format: Format,

    /// Seed for randomized checks
    #[arg(long, env = "PSOLV_SEED", default_value_t = 0)]
    seed: u64,

    /// Include wall time per report (makes output nondeterministic)
    #[arg(long)]
    timing: bool,

    /// Largest group enumerated element by element
    #[arg(long, default_value_t = Limits::default().enum_cap)]
    enum_cap: u128,

    /// Largest coset space for quotients
    #[arg(long, default_value_t = Limits::default().coset_cap)]
    coset_cap: u128,

    /// Node budget for the potent-filtration search
    #[arg(long, default_value_t = Limits::default().search_budget)]
    search_budget: u64,
}

impl Output {
    fn limits(&self) -> Limits {
        Limits {
            enum_cap: self.enum_cap,
            coset_cap: self.coset_cap,
            search_budget: self.search_budget,
        }
    }
}

#[derive(Args, Debug, Clone)]
#[command(after_help = names::HELP)]
struct Common {
    /// Catalog recipe, e.g. symmetric:4 or product(cyclic:9,cyclic:3)
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    recipe: Option<String>,

    /// Group file: {"degree": n, "generators": [[images...], ...]}
    #[arg(long)]
    file: Option<PathBuf>,

    /// The prime
    #[arg(long)]
    p: u64,

    #[command(flatten)]
    out: Output,
}

impl Common {
    fn load(&self) -> Result<(String, PermGroup)> {
        match (&self.recipe, &self.file) {
            (Some(r), _) => {
                let recipe: GroupRecipe = r.parse()?;
                Ok((recipe.id(), recipe.build()?))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::UnsupportedParameters(format!("cannot read {}: {e}", path.display()))
                })?;
                Ok((format!("file:{}", path.display()), parse_group(&text)?))
            }
            (None, None) => Err(Error::UnsupportedParameters("no group given".into())),
        }
    }
}

#[derive(Args, Debug)]
struct EkrArgs {
    #[command(flatten)]
    common: Common,

    /// Single k instead of the whole table
    #[arg(long)]
    k: Option<usize>,

    /// Single r instead of the whole table
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum PfCommand {
    /// Check a chain of subgroups of the Sylow p-subgroup
    Verify(PfVerifyArgs),
    /// Search for a potent filtration starting at a subgroup
    Search(PfSearchArgs),
}

#[derive(Args, Debug)]
struct PfVerifyArgs {
    #[command(flatten)]
    common: Common,

    /// Comma-separated subgroup names, first term first
    #[arg(long, value_delimiter = ',', required = true)]
    terms: Vec<String>,

    /// Filtration type
    #[arg(long)]
    l: u32,
}

#[derive(Args, Debug)]
struct PfSearchArgs {
    #[command(flatten)]
    common: Common,

    /// Starting subgroup
    #[arg(long, default_value = "G")]
    normal: String,

    /// Filtration type
    #[arg(long)]
    l: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Statement {
    Main,
    Thm6,
    Prop1,
    Prop3,
    Prop4,
    Lemma8,
    O24,
    Action,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    statement: Statement,

    #[command(flatten)]
    common: Common,

    /// Subgroup N (lemma8, prop3, prop4)
    #[arg(long)]
    normal: Option<String>,

    /// Filtration terms (prop1, prop3, prop4); searched for when omitted
    #[arg(long, value_delimiter = ',')]
    terms: Vec<String>,

    /// ℓ for main/thm6 and filtration types; l for lemma8 and o24
    #[arg(long)]
    l: Option<u32>,

    /// r for o24
    #[arg(long, default_value_t = 1)]
    r: u32,

    /// Subgroup V for o24
    #[arg(long, default_value = "op")]
    v: String,

    /// Subgroup M for o24
    #[arg(long, default_value = "sylow")]
    m: String,

    /// Random pairs for the homomorphism check (action)
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
}

#[derive(Subcommand, Debug)]
enum ScanCommand {
    /// PF-embedded subgroups of type p-1 against O_p',p
    Question7(ScanArgs),
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Recipes to scan; the whole catalog when omitted
    #[arg(long)]
    recipe: Vec<String>,

    #[arg(long)]
    p: u64,

    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Recipe ids with their orders
    List {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Every statement on every catalog group
    Run(CatalogRunArgs),
}

#[derive(Args, Debug)]
struct CatalogRunArgs {
    #[arg(long)]
    p: u64,

    /// Restrict to these recipes
    #[arg(long)]
    only: Vec<String>,

    /// Largest ℓ tried by the hypothesis scans
    #[arg(long, default_value_t = 3)]
    max_ell: u32,

    #[command(flatten)]
    out: Output,
}

/// What a subcommand produced.
enum Outcome {
    Document(ReportDocument, Output),
    Text(String),
}

fn single(id: &str, v: Verdict, started: Instant, out: &Output) -> Outcome {
    let mut r = Report::new(id, v);
    if out.timing {
        r.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    Outcome::Document(ReportDocument::new(vec![r]), out.clone())
}

fn analyze(c: &Common) -> Result<Outcome> {
    let started = Instant::now();
    let (id, g) = c.load()?;
    let p = c.p;
    let lim = c.out.limits();
    let upper = upper_p_series(&g, p, &lim)?;
    let sylow_p = sylow(&g, p, &lim)?;
    let orders = |s: &psolv::series::SeriesReport| {
        json!(s
            .orders()
            .into_iter()
            .map(|(l, o)| json!([l, order_value(o)]))
            .collect::<Vec<_>>())
    };
    let mut v = Verdict::new("analysis")
        .hypothesis(true)
        .report_only()
        .param("p", p)
        .param("degree", g.degree() as u64)
        .param("order", order_value(g.order()))
        .param("sylow_order", order_value(sylow_p.order()))
        .param("op_order", order_value(o_p(&g, p, &lim)?.order()))
        .param("opp_order", order_value(o_pprime(&g, p, &lim)?.order()))
        .param("is_p_solvable", upper.is_p_solvable == Some(true))
        .param("upper_p_series", orders(&upper))
        .param("lower_central_series", orders(&lower_central_series(&g)))
        .param("derived_series", orders(&derived_series(&g)));
    if upper.is_p_solvable == Some(true) {
        v.set_param("p_length", upper.p_length.unwrap_or(0) as u64);
    }
    match exponent(&g, &lim) {
        Ok(e) => v.set_param("exponent", order_value(e)),
        Err(e) => v.note(format!("exponent: {e}")),
    }
    Ok(single(&id, v, started, &c.out))
}

fn ekr_table(a: &EkrArgs) -> Result<Outcome> {
    let started = Instant::now();
    let c = &a.common;
    let (id, g) = c.load()?;
    let lim = c.out.limits();
    let p_group = sylow(&g, c.p, &lim)?;
    let mut ctx = EkrContext::new(&p_group, c.p, &lim)?;
    let ks: Vec<usize> = match a.k {
        Some(k) => vec![k],
        None => (1..=ctx.class + 1 + ctx.exponent_log as usize * (c.p as usize - 1)).collect(),
    };
    let rs: Vec<usize> = match a.r {
        Some(r) => vec![r],
        None => (1..=ctx.class.max(1)).collect(),
    };
    let mut rows = Vec::new();
    for &r in &rs {
        for &k in &ks {
            let e = ctx.ekr(k, r, &lim)?;
            rows.push(json!({
                "k": k,
                "r": r,
                "order": order_value(e.group.order()),
                "terms": e.terms,
            }));
        }
    }
    let v = Verdict::new("ekr")
        .hypothesis(true)
        .report_only()
        .param("p", c.p)
        .param("class", ctx.class as u64)
        .param("exponent_log", ctx.exponent_log)
        .param("table", rows);
    Ok(single(&id, v, started, &c.out))
}

fn ambient(c: &Common) -> Result<(String, PermGroup, PermGroup)> {
    let (id, g) = c.load()?;
    let p_group = sylow(&g, c.p, &c.out.limits())?;
    Ok((id, g, p_group))
}

fn terms_in(
    names_list: &[String],
    g: &PermGroup,
    p_group: &PermGroup,
    p: u64,
    lim: &Limits,
) -> Result<Vec<PermGroup>> {
    names_list
        .iter()
        .map(|n| names::resolve(n, g, p_group, p, lim))
        .collect()
}

fn pf(cmd: &PfCommand) -> Result<Outcome> {
    let started = Instant::now();
    match cmd {
        PfCommand::Verify(a) => {
            let c = &a.common;
            let lim = c.out.limits();
            let (id, g, p_group) = ambient(c)?;
            let terms = terms_in(&a.terms, &g, &p_group, c.p, &lim)?;
            let f = Filtration::new(p_group, c.p, a.l, terms);
            let pv = verify_potent_filtration(&f, &lim)?;
            let mut v = Verdict::new("pf_verify")
                .hypothesis(true)
                .report_only()
                .param("p", c.p)
                .param("ell", a.l)
                .param("valid", pv.valid)
                .param(
                    "orders",
                    json!(f.orders().into_iter().map(order_value).collect::<Vec<_>>()),
                );
            if let Some(fail) = &pv.first_failure {
                v.set_param("condition", fail.condition);
                v.set_param("term", fail.term as u64);
                if let Some(w) = &fail.witness {
                    v.witness("violating generator", w.clone());
                }
            }
            if a.l == 0 {
                v.note("type 0: the power condition reads N_i ≤ N_{i+1}^p");
            }
            Ok(single(&id, v, started, &c.out))
        }
        PfCommand::Search(a) => {
            let c = &a.common;
            let lim = c.out.limits();
            let (id, g, p_group) = ambient(c)?;
            let n = names::resolve(&a.normal, &g, &p_group, c.p, &lim)?;
            let outcome = pf_embedded_search(&p_group, c.p, &n, a.l, &lim)?;
            let mut v = Verdict::new("pf_search")
                .hypothesis(true)
                .report_only()
                .param("p", c.p)
                .param("ell", a.l)
                .param("n_order", order_value(n.order()));
            match outcome {
                SearchOutcome::Found(f) => {
                    v.set_param("outcome", "found");
                    v.set_param(
                        "orders",
                        json!(f.orders().into_iter().map(order_value).collect::<Vec<_>>()),
                    );
                    v.witness("filtration", describe_filtration(&f));
                }
                SearchOutcome::NotPfEmbedded => v.set_param("outcome", "not_pf_embedded"),
                SearchOutcome::Exhausted => v.set_param("outcome", "exhausted"),
            }
            Ok(single(&id, v, started, &c.out))
        }
    }
}

/// The filtration for prop1/3/4: given terms, or found by search from `--normal`.
fn filtration_for(
    a: &VerifyArgs,
    g: &PermGroup,
    p_group: &PermGroup,
    ell: u32,
) -> Result<Option<Filtration>> {
    let c = &a.common;
    let lim = c.out.limits();
    if !a.terms.is_empty() {
        let terms = terms_in(&a.terms, g, p_group, c.p, &lim)?;
        return Ok(Some(Filtration::new(p_group.clone(), c.p, ell, terms)));
    }
    let name = a.normal.as_deref().unwrap_or("G");
    let n = names::resolve(name, g, p_group, c.p, &lim)?;
    match pf_embedded_search(p_group, c.p, &n, ell, &lim)? {
        SearchOutcome::Found(f) => Ok(Some(f)),
        _ => Ok(None),
    }
}

fn no_filtration(statement: &str, p: u64, ell: u32) -> Verdict {
    let mut v = Verdict::new(statement).param("p", p).param("ell", ell);
    v.note("no potent filtration of this type starts at N");
    v
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let started = Instant::now();
    let c = &a.common;
    let p = c.p;
    let lim = c.out.limits();
    let (id, g, p_group) = ambient(c)?;
    let v = match a.statement {
        Statement::Main => verify_main(&g, p, a.l, &lim)?,
        Statement::Thm6 => verify_theorem6(&g, p, a.l, &lim)?,
        Statement::Prop1 => {
            let ell = a.l.unwrap_or(p as u32 - 1);
            match filtration_for(a, &g, &p_group, ell)? {
                Some(f) => check_prop1(&f, &lim)?,
                None => no_filtration("prop1", p, ell),
            }
        }
        Statement::Prop3 => {
            if p < 3 {
                return Err(Error::PreconditionViolated("prop3 needs p ≥ 3".into()));
            }
            let ell = p as u32 - 2;
            match filtration_for(a, &g, &p_group, ell)? {
                Some(f) => verify_prop3(&g, &f, &lim)?,
                None => no_filtration("prop3", p, ell),
            }
        }
        Statement::Prop4 => {
            let ell = p as u32 - 1;
            match filtration_for(a, &g, &p_group, ell)? {
                Some(f) => verify_prop4(&g, &f, &lim)?,
                None => no_filtration("prop4", p, ell),
            }
        }
        Statement::Lemma8 => {
            let name = a.normal.as_deref().unwrap_or("G");
            let n = names::resolve(name, &g, &g, p, &lim)?;
            verify_lemma8(&g, p, &n, a.l.unwrap_or(1), &lim)?
        }
        Statement::O24 => {
            let v_sub = names::resolve(&a.v, &g, &p_group, p, &lim)?;
            let m_sub = names::resolve(&a.m, &g, &p_group, p, &lim)?;
            check_o24_inclusion(&p_group, &v_sub, &m_sub, p, a.r, a.l.unwrap_or(1), &lim)?
        }
        Statement::Action => verify_linear_action(&g, p, c.out.seed, a.pairs, &lim)?,
    };
    Ok(single(&id, v, started, &c.out))
}

fn scan(cmd: &ScanCommand) -> Result<Outcome> {
    let ScanCommand::Question7(a) = cmd;
    let lim = a.out.limits();
    let recipes: Vec<GroupRecipe> = if a.recipe.is_empty() {
        default_catalog()
    } else {
        a.recipe.iter().map(|r| r.parse()).collect::<Result<_>>()?
    };
    let mut groups = Vec::new();
    for r in &recipes {
        groups.push((r.id(), r.build()?));
    }
    let report = question7_scan(&groups, a.p, &lim)?;
    let reports = report
        .groups
        .iter()
        .map(|grp| {
            let mut v = Verdict::new("question7")
                .hypothesis(grp.skipped.is_none())
                .report_only()
                .param("p", a.p)
                .param("pf_embedded", grp.entries.len() as u64)
                .param(
                    "entries",
                    serde_json::to_value(&grp.entries).expect("entries serialize"),
                );
            if let Some(o) = grp.core_order {
                v.set_param("core_order", order_value(o));
            }
            if let Some(reason) = &grp.skipped {
                v.note(format!("skipped: {reason}"));
            }
            for e in grp.entries.iter().filter(|e| !e.in_core) {
                v.witness("outside O_{p',p}(G)", e.subgroup.clone());
            }
            Report::new(grp.group_id.clone(), v)
        })
        .collect::<Vec<_>>();
    let mut doc = ReportDocument::new(reports);
    if let Some(first) = doc.reports.first_mut() {
        first.verdict.note(report.note.clone());
    }
    Ok(Outcome::Document(doc, a.out.clone()))
}

fn catalog(cmd: &CatalogCommand) -> Result<Outcome> {
    match cmd {
        CatalogCommand::List { format } => {
            let rows: Vec<(String, Option<u128>)> = default_catalog()
                .iter()
                .map(|r| (r.id(), r.expected_order()))
                .collect();
            let text = match format {
                Format::Json => {
                    let list: Vec<_> = rows
                        .iter()
                        .map(|(id, o)| json!({"id": id, "order": o.map(order_value)}))
                        .collect();
                    serde_json::to_string_pretty(&list).expect("list serializes") + "\n"
                }
                Format::Text => rows
                    .iter()
                    .map(|(id, o)| format!("{id}\t{}\n", o.map_or("?".into(), |o| o.to_string())))
                    .collect(),
            };
            Ok(Outcome::Text(text))
        }
        CatalogCommand::Run(a) => {
            let mut recipes = default_catalog();
            if !a.only.is_empty() {
                recipes = a.only.iter().map(|r| r.parse()).collect::<Result<_>>()?;
            }
            let mut opts = RunOptions::new(a.p, a.out.seed);
            opts.limits = a.out.limits();
            opts.max_ell = a.max_ell;
            psolv::group::is_prime(a.p)
                .then_some(())
                .ok_or(Error::NotPrime(a.p))?;
            let started = Instant::now();
            let mut doc = run_catalog(&recipes, &opts);
            if a.out.timing {
                let ms = started.elapsed().as_millis() as u64;
                for r in &mut doc.reports {
                    r.timing_ms = Some(ms);
                }
            }
            Ok(Outcome::Document(doc, a.out.clone()))
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(c) => analyze(c),
        Command::Ekr(a) => ekr_table(a),
        Command::Pf(cmd) => pf(cmd),
        Command::Verify(a) => verify(a),
        Command::Scan(cmd) => scan(cmd),
        Command::Catalog(cmd) => catalog(cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(Outcome::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Document(doc, out)) => {
            print!("{}", emit_report(&doc, out.format.into()));
            if doc.has_findings() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
