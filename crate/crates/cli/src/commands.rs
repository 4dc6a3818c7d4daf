use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use minsupp_core::characterize::{
    factorize, is_minimum_and_characterized, Factorization, VerdictKind,
};
use minsupp_core::claims::{self, Scale};
use minsupp_core::constructions::{
    family_template, product, FactorCounts, FactorizationCertificate, Regime, SupportBound,
};
use minsupp_core::hgf::{format_rational, parse_hgf, parse_rational, to_hgf};
use minsupp_core::reduction::{
    check_lemma_reduction, support_lower_bound_inequality, uniformity_witness, CaseReport,
};
use minsupp_core::search::{
    construction_support, find_minimum, verify_lower_bound, BoundVerdict, MinimumReport,
};
use minsupp_core::spectra::{in_direct_sum, project_range, projection_profile};
use minsupp_core::{
    build_f1, build_f2, counterexample_g, counterexample_h, counterexample_v, min_support_bound,
    EigenRange, ElementaryFactor, Error, FactorParams, Family, GridFunction, Rational,
    SearchBudget, Word,
};
use serde_json::{json, Value};

pub struct Output {
    /// Printed to standard output in text mode.
    text: String,
    /// Printed to standard error in text mode, dropped with `--json`.
    note: Option<String>,
    json: Value,
    pub code: u8,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Self {
            text,
            note: None,
            json,
            code: 0,
        }
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(&self.json).expect("serializable")
            );
        } else {
            print!("{}", self.text);
            if let Some(note) = &self.note {
                eprint!("{note}");
            }
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self {
            code: 1,
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

type CliResult = Result<Output, CliError>;

/// Eigenspace index range `[i, j]`.
#[derive(Debug, Clone, Copy, Args)]
pub struct RangeArgs {
    #[arg(long)]
    pub i: usize,
    /// Defaults to `i`.
    #[arg(long)]
    pub j: Option<usize>,
}

impl RangeArgs {
    fn resolve(self, n: usize) -> Result<EigenRange, CliError> {
        checked_range(n, self.i, self.j.unwrap_or(self.i))
    }
}

fn checked_range(n: usize, i: usize, j: usize) -> Result<EigenRange, CliError> {
    if i > j || j > n {
        return Err(usage(format!(
            "need 0 <= i <= j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok(EigenRange::new(i, j)?)
}

fn check_q(q: u32) -> Result<(), CliError> {
    if q < 2 {
        return Err(usage(format!("need q >= 2, got {q}")));
    }
    Ok(())
}

fn read_function(path: &Path) -> Result<GridFunction, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_hgf(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn words(f: &GridFunction) -> Vec<String> {
    f.support()
        .into_iter()
        .map(|idx| {
            Word::from_index(idx, f.n(), f.q())
                .expect("index in range")
                .to_string()
        })
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    F1,
    F2,
    A1,
    A2,
    A3,
    A4,
    CounterexampleG,
    CounterexampleH,
    CounterexampleV,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    i: Option<usize>,
    /// Defaults to `i`.
    #[arg(long)]
    j: Option<usize>,
    /// First parameter of a1/a2.
    #[arg(long)]
    k: Option<u32>,
    /// Second parameter of a1/a2, the parameter of a4.
    #[arg(long)]
    m: Option<u32>,
    /// Scalar multiplier such as `-3/2`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: String,
    /// a1 parameters of a family member as `k:m,k:m,...`.
    #[arg(long)]
    a1: Option<String>,
    /// a2 parameters of an F2 member as `k:m,k:m,...`.
    #[arg(long)]
    a2: Option<String>,
    /// a4 parameters of a family member as `m,m,...`.
    #[arg(long)]
    a4: Option<String>,
    /// Output file; the HGF text goes to standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn require<T>(value: Option<T>, flag: &str, family: GenFamily) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("--{flag} is required for {family:?}")))
}

fn parse_pairs(text: &str) -> Result<Vec<(u32, u32)>, CliError> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (k, m) = pair
                .split_once(':')
                .ok_or_else(|| usage(format!("expected `k:m`, got `{pair}`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| usage(format!("bad symbol `{s}`")))
            };
            Ok((parse(k)?, parse(m)?))
        })
        .collect()
}

fn parse_list(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad symbol `{s}`")))
        })
        .collect()
}

fn parse_scalar(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| usage(format!("bad scalar `{text}`")))
}

pub fn gen(args: GenArgs) -> CliResult {
    let c = parse_scalar(&args.c)?;
    let family = args.family;
    let q = || require(args.q, "q", family).and_then(|q| check_q(q).map(|_| q));
    let (f, range) = match family {
        GenFamily::F1 | GenFamily::F2 => {
            let n = require(args.n, "n", family)?;
            let q = q()?;
            let i = require(args.i, "i", family)?;
            let range = checked_range(n, i, args.j.unwrap_or(i))?;
            let fam = if family == GenFamily::F1 {
                Family::F1
            } else {
                Family::F2
            };
            let counts = family_template(fam, n, range.lo, range.hi)?;
            let mut params = FactorParams::defaults(q, counts);
            if let Some(a1) = &args.a1 {
                params.a1 = parse_pairs(a1)?;
            }
            if let Some(a2) = &args.a2 {
                params.a2 = parse_pairs(a2)?;
            }
            if let Some(a4) = &args.a4 {
                params.a4 = parse_list(a4)?;
            }
            let f = match fam {
                Family::F1 => build_f1(n, q, range.lo, range.hi, Some(&params), &c)?,
                Family::F2 => build_f2(n, q, range.lo, range.hi, Some(&params), &c)?,
            };
            (f, range)
        }
        GenFamily::A1 | GenFamily::A2 | GenFamily::A3 | GenFamily::A4 => {
            let q = q()?;
            let (factor, range) = match family {
                GenFamily::A1 => (
                    ElementaryFactor::A1 {
                        k: require(args.k, "k", family)?,
                        m: require(args.m, "m", family)?,
                    },
                    EigenRange::single(1),
                ),
                GenFamily::A2 => (
                    ElementaryFactor::A2 {
                        k: require(args.k, "k", family)?,
                        m: require(args.m, "m", family)?,
                    },
                    EigenRange::single(1),
                ),
                GenFamily::A3 => (ElementaryFactor::A3, EigenRange::single(0)),
                _ => (
                    ElementaryFactor::A4 {
                        m: require(args.m, "m", family)?,
                    },
                    EigenRange::new(0, 1)?,
                ),
            };
            (product(q, &[factor], &c)?, range)
        }
        GenFamily::CounterexampleG => (counterexample_g(q()?)?.scale(&c), EigenRange::new(1, 2)?),
        GenFamily::CounterexampleH => (counterexample_h().scale(&c), EigenRange::single(2)),
        GenFamily::CounterexampleV => (counterexample_v().scale(&c), EigenRange::single(2)),
    };
    if f.is_zero() {
        return Err(usage("the scalar must be nonzero"));
    }
    let member = in_direct_sum(&f, range)?;
    let hgf = to_hgf(&f);
    let summary = format!(
        "n={} q={} support={} member of U_{}: {}\n",
        f.n(),
        f.q(),
        f.support_size(),
        range,
        yes_no(member)
    );
    let mut json = json!({
        "n": f.n(),
        "q": f.q(),
        "range": [range.lo, range.hi],
        "support": f.support_size(),
        "member": member,
    });
    let mut output = match &args.out {
        Some(path) => {
            write_file(path, &hgf)?;
            json["out"] = json!(path.display().to_string());
            Output::new(summary, json)
        }
        None => {
            json["hgf"] = json!(hgf);
            let mut output = Output::new(hgf, json);
            output.note = Some(summary);
            output
        }
    };
    if !member {
        output.code = 1;
    }
    Ok(output)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    input: PathBuf,
    #[arg(long)]
    i: Option<usize>,
    /// Defaults to `i`.
    #[arg(long)]
    j: Option<usize>,
}

fn profile_indices(f: &GridFunction) -> Vec<usize> {
    projection_profile(f)
        .into_iter()
        .enumerate()
        .filter_map(|(t, nonzero)| nonzero.then_some(t))
        .collect()
}

pub fn verify(args: VerifyArgs) -> CliResult {
    let f = read_function(&args.input)?;
    let range = match (args.i, args.j) {
        (Some(i), j) => Some(checked_range(f.n(), i, j.unwrap_or(i))?),
        (None, Some(_)) => return Err(usage("--j needs --i")),
        (None, None) => None,
    };
    let profile = profile_indices(&f);
    let uniform = if f.n() >= 1 {
        uniformity_witness(&f)?
    } else {
        None
    };
    let member = range.map(|r| in_direct_sum(&f, r)).transpose()?;

    let mut text = format!("n={} q={}\nsupport: {}\n", f.n(), f.q(), f.support_size());
    if f.is_zero() {
        text.push_str("warning: the zero function is trivially in every subspace\n");
    }
    let listed: Vec<String> = profile.iter().map(|t| format!("E_{t}")).collect();
    text.push_str(&format!(
        "profile: {}\n",
        if listed.is_empty() {
            "(none)".to_string()
        } else {
            listed.join(" ")
        }
    ));
    match &uniform {
        Some(l) => {
            let l: Vec<String> = l.iter().map(u32::to_string).collect();
            text.push_str(&format!("uniform: yes (l = {})\n", l.join(" ")));
        }
        None if f.n() == 0 => text.push_str("uniform: n/a\n"),
        None => text.push_str("uniform: no\n"),
    }
    if let (Some(r), Some(m)) = (range, member) {
        text.push_str(&format!("member of U_{r}: {}\n", yes_no(m)));
    }
    let json = json!({
        "n": f.n(),
        "q": f.q(),
        "support": f.support_size(),
        "zero": f.is_zero(),
        "profile": profile,
        "uniform": uniform.is_some(),
        "uniformity_witness": uniform,
        "range": range.map(|r| [r.lo, r.hi]),
        "member": member,
    });
    Ok(Output::new(text, json))
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    input: PathBuf,
    #[command(flatten)]
    range: RangeArgs,
    /// Output file; the HGF text goes to standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn project(args: ProjectArgs) -> CliResult {
    let f = read_function(&args.input)?;
    let range = args.range.resolve(f.n())?;
    let p = project_range(&f, range)?;
    let hgf = to_hgf(&p);
    let summary = format!("projected onto U_{range}: support {}\n", p.support_size());
    let mut json = json!({ "range": [range.lo, range.hi], "support": p.support_size() });
    Ok(match &args.out {
        Some(path) => {
            write_file(path, &hgf)?;
            Output::new(summary, json)
        }
        None => {
            json["hgf"] = json!(hgf);
            let mut output = Output::new(hgf, json);
            output.note = Some(summary);
            output
        }
    })
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    input: PathBuf,
    #[command(flatten)]
    range: RangeArgs,
    /// Coordinate to slice along, 1-based; all coordinates when omitted.
    #[arg(long)]
    r: Option<usize>,
}

fn target(case: &CaseReport) -> String {
    match case.target {
        Some((lo, hi)) if lo == hi => format!("U_{lo}"),
        Some((lo, hi)) => format!("U_[{lo},{hi}]"),
        None => "{0}".into(),
    }
}

fn case_json(case: &CaseReport) -> Value {
    json!({
        "passed": case.passed,
        "target": case.target,
        "counterexample": case.counterexample,
    })
}

pub fn reduce(args: ReduceArgs) -> CliResult {
    let f = read_function(&args.input)?;
    let range = args.range.resolve(f.n())?;
    if f.n() < 2 {
        return Err(usage("reduce needs n >= 2"));
    }
    let coordinates: Vec<usize> = match args.r {
        Some(r) if r == 0 || r > f.n() => {
            return Err(usage(format!("--r must be in 1..={}", f.n())));
        }
        Some(r) => vec![r - 1],
        None => (0..f.n()).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for r in coordinates {
        let report = check_lemma_reduction(&f, range, r)?;
        all &= report.all_passed();
        text.push_str(&format!("coordinate {}:\n", r + 1));
        for (label, case) in [
            ("slice differences", &report.differences),
            ("slice sum", &report.slice_sum),
            ("single slices", &report.slices),
        ] {
            text.push_str(&format!(
                "  {label:<18} in {:<10} {}\n",
                target(case),
                if case.passed { "pass" } else { "FAIL" }
            ));
        }
        let inequality = support_lower_bound_inequality(&f, r).ok();
        if let Some(ineq) = &inequality {
            text.push_str(&format!(
                "  support inequality {} >= {} {}\n",
                ineq.lhs,
                ineq.rhs,
                if ineq.holds() { "pass" } else { "FAIL" }
            ));
            all &= ineq.holds();
        }
        rows.push(json!({
            "coordinate": r + 1,
            "differences": case_json(&report.differences),
            "slice_sum": case_json(&report.slice_sum),
            "slices": case_json(&report.slices),
            "support_inequality": inequality.map(|i| json!({ "lhs": i.lhs, "rhs": i.rhs, "holds": i.holds() })),
        }));
    }
    let uniform = uniformity_witness(&f)?.is_some();
    text.push_str(&format!("uniform: {}\n", yes_no(uniform)));
    let json = json!({ "range": [range.lo, range.hi], "coordinates": rows, "uniform": uniform, "passed": all });
    Ok(Output::new(text, json))
}

#[derive(Debug, Args)]
pub struct MinsupportArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    lo: usize,
    #[arg(long)]
    hi: usize,
    /// Largest support to try; defaults to the construction's support.
    #[arg(long)]
    max_support: Option<usize>,
    /// Disable orbit pruning.
    #[arg(long)]
    no_prune: bool,
    /// Cap on rank tests; running out exits with code 2.
    #[arg(long)]
    max_subsets: Option<u64>,
    /// Write the witness of minimum support as HGF.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
}

fn budget(max_support: usize, prune: bool, max_subsets: Option<u64>) -> SearchBudget {
    SearchBudget {
        max_subsets,
        symmetry_pruning: prune,
        ..SearchBudget::new(max_support)
    }
}

pub fn minsupport(args: MinsupportArgs) -> CliResult {
    check_q(args.q)?;
    let range = checked_range(args.n, args.lo, args.hi)?;
    let max_support = match args.max_support {
        Some(s) => s,
        None => construction_support(args.n, args.q, range)?
            .1
            .support_size(),
    };
    let report = find_minimum(
        args.n,
        args.q,
        range,
        &budget(max_support, !args.no_prune, args.max_subsets),
    )?;
    let head = format!("U_{range}({},{})", args.n, args.q);
    match report {
        MinimumReport::Conclusive {
            minimum,
            witness,
            subsets_examined,
        } => {
            if let Some(path) = &args.emit_witness {
                write_file(path, &to_hgf(&witness))?;
            }
            let support = words(&witness);
            let text = format!(
                "{head}: minimum support {minimum}\nwitness support: {}\ncandidate sets examined: {subsets_examined}\n",
                support.join(" ")
            );
            let json = json!({
                "n": args.n, "q": args.q, "range": [range.lo, range.hi],
                "status": "conclusive",
                "minimum": minimum,
                "witness_support": support,
                "witness": to_hgf(&witness),
                "subsets_examined": subsets_examined,
            });
            Ok(Output::new(text, json))
        }
        MinimumReport::Inconclusive {
            lower,
            upper,
            subsets_examined,
        } => {
            let upper_text = upper.map_or("?".to_string(), |u| u.to_string());
            let text = format!(
                "{head}: inconclusive, minimum in [{lower}, {upper_text}]\ncandidate sets examined: {subsets_examined}\n"
            );
            let json = json!({
                "n": args.n, "q": args.q, "range": [range.lo, range.hi],
                "status": "inconclusive",
                "lower": lower,
                "upper": upper.map(|u| u.to_string()),
                "subsets_examined": subsets_examined,
            });
            let mut output = Output::new(text, json);
            output.code = 2;
            Ok(output)
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    #[command(flatten)]
    range: RangeArgs,
    /// Exhaustively confirm that nothing sparser exists.
    #[arg(long)]
    verify: bool,
    /// Disable orbit pruning during --verify.
    #[arg(long)]
    no_prune: bool,
    #[arg(long)]
    max_subsets: Option<u64>,
}

fn regime_name(regime: Regime) -> &'static str {
    match regime {
        Regime::Balanced => "balanced (n >= i+j)",
        Regime::Overloaded => "overloaded (i+j > n)",
    }
}

fn bound_json(bound: &SupportBound) -> Value {
    json!({
        "value": bound.value.to_string(),
        "regime": bound.regime,
        "min_q": bound.min_q,
        "q_valid": bound.q_valid,
        "characterized": bound.characterized,
        "uniform_bound": bound.uniform_bound.map(|u| u.to_string()),
    })
}

fn bound_text(bound: &SupportBound, q: u32) -> String {
    let mut text = format!(
        "bound: {}\nregime: {}\nproven for q >= {}: {}\ncharacterized: {}\n",
        bound.value,
        regime_name(bound.regime),
        bound.min_q,
        if bound.q_valid {
            format!("yes (q={q})")
        } else {
            format!("no (q={q})")
        },
        yes_no(bound.characterized)
    );
    if let Some(u) = bound.uniform_bound {
        text.push_str(&format!("uniform bound: {u}\n"));
    }
    text
}

pub fn bound(args: BoundArgs) -> CliResult {
    check_q(args.q)?;
    let range = args.range.resolve(args.n)?;
    let bound = min_support_bound(args.n, args.q, range.lo, range.hi)?;
    let mut text = bound_text(&bound, args.q);
    let mut json = json!({ "n": args.n, "q": args.q, "range": [range.lo, range.hi], "bound": bound_json(&bound) });
    let mut code = 0;
    if args.verify {
        let value = usize::try_from(bound.value).map_err(|_| usage("bound too large to search"))?;
        let report = verify_lower_bound(
            args.n,
            args.q,
            range,
            &budget(value, !args.no_prune, args.max_subsets),
        )?;
        let verdict = match report.verdict {
            BoundVerdict::Verified => "verified: no sparser member, construction attains the bound",
            BoundVerdict::Refuted => "refuted: the formula is not the minimum here",
            BoundVerdict::Inconclusive => "inconclusive: search budget exhausted",
        };
        if report.verdict == BoundVerdict::Inconclusive {
            code = 2;
        }
        text.push_str(&format!(
            "search: {verdict}\ncandidate sets examined: {}\n",
            report.below.subsets_examined
        ));
        if let Some(w) = &report.below.witness {
            text.push_str(&format!(
                "sparser witness support: {}\n",
                words(w).join(" ")
            ));
        }
        json["verdict"] = json!(report.verdict);
        json["subsets_examined"] = json!(report.below.subsets_examined);
        json["sparser_witness"] = json!(report.below.witness.as_ref().map(to_hgf));
    }
    let mut output = Output::new(text, json);
    output.code = code;
    Ok(output)
}

#[derive(Debug, Args)]
pub struct CharacterizeArgs {
    input: PathBuf,
    #[command(flatten)]
    range: RangeArgs,
}

fn verdict_text(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::MinimumInFamily => "minimum support, member of the family",
        VerdictKind::MinimumNotInFamily => {
            "minimum support, but not in the family (characterization gap)"
        }
        VerdictKind::MinimumUncharacterizedRegime => {
            "minimum support, uncharacterized regime (i < j, i+j > n)"
        }
        VerdictKind::AboveMinimum => "support above the minimum",
        VerdictKind::BelowFormulaOpenRegime => {
            "support below the formula; the formula is unproven for this q"
        }
        VerdictKind::Contradiction => "CONTRADICTION with a proven bound or characterization",
    }
}

fn certificate_text(cert: &FactorizationCertificate) -> String {
    let factors: Vec<String> = cert.factors.iter().map(ToString::to_string).collect();
    format!(
        "family: {}\nsigma: {}\nfactors: {}\nc: {}\n",
        cert.family,
        cert.sigma.cycle_notation(),
        if factors.is_empty() {
            "(none)".into()
        } else {
            factors.join(" ")
        },
        format_rational(&cert.c)
    )
}

fn certificate_json(cert: &FactorizationCertificate) -> Value {
    json!({
        "family": cert.family,
        "sigma": cert.sigma.cycle_notation(),
        "factors": cert.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "counts": {
            "a1": FactorCounts::of(&cert.factors).a1,
            "a2": FactorCounts::of(&cert.factors).a2,
            "a3": FactorCounts::of(&cert.factors).a3,
            "a4": FactorCounts::of(&cert.factors).a4,
        },
        "c": format_rational(&cert.c),
    })
}

pub fn characterize(args: CharacterizeArgs) -> CliResult {
    let f = read_function(&args.input)?;
    let range = args.range.resolve(f.n())?;
    let verdict = is_minimum_and_characterized(&f, range)?;
    let membership = match factorize(&f, range)? {
        Factorization::Member(_) => "member",
        Factorization::NotMember => "not a member",
        Factorization::UncharacterizedRegime => "uncharacterized regime",
    };
    let mut text = format!(
        "support: {}\nbound: {}\nverdict: {}\nfactorization: {membership}\n",
        verdict.support,
        verdict.bound.value,
        verdict_text(verdict.kind)
    );
    if let Some(cert) = &verdict.certificate {
        text.push_str(&certificate_text(cert));
    }
    let json = json!({
        "support": verdict.support,
        "bound": bound_json(&verdict.bound),
        "verdict": verdict.kind,
        "factorization": membership,
        "certificate": verdict.certificate.as_ref().map(certificate_json),
    });
    let mut output = Output::new(text, json);
    if verdict.kind == VerdictKind::Contradiction {
        output.code = 1;
    }
    Ok(output)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
pub struct PaperCheckArgs {
    #[arg(long, value_enum, default_value = "quick")]
    scale: ScaleArg,
    /// Run only the named claim.
    #[arg(long)]
    only: Option<String>,
}

pub fn paper_check(args: PaperCheckArgs) -> CliResult {
    let scale = match args.scale {
        ScaleArg::Quick => Scale::Quick,
        ScaleArg::Full => Scale::Full,
    };
    let selected: Vec<&claims::Claim> = match &args.only {
        Some(name) => vec![claims::find_claim(name).ok_or_else(|| {
            let known: Vec<&str> = claims::CLAIMS.iter().map(|c| c.name).collect();
            usage(format!(
                "unknown claim `{name}`; known: {}",
                known.join(", ")
            ))
        })?],
        None => claims::CLAIMS.iter().collect(),
    };
    let rows: Vec<claims::ClaimRow> = selected.iter().map(|claim| claim.run(scale)).collect();
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for row in &rows {
        text.push_str(&format!(
            "{:<width$}  {}  {:>9.3}s  {}\n",
            row.name,
            if row.passed { "pass" } else { "FAIL" },
            row.elapsed.as_secs_f64(),
            row.detail
        ));
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    text.push_str(&format!("{passed}/{} claims passed\n", rows.len()));
    let json = json!({
        "scale": scale,
        "rows": rows.iter().map(|r| json!({
            "name": r.name,
            "statement": r.statement,
            "passed": r.passed,
            "detail": r.detail,
            "seconds": r.elapsed.as_secs_f64(),
        })).collect::<Vec<_>>(),
        "passed": passed,
        "total": rows.len(),
    });
    let mut output = Output::new(text, json);
    if passed != rows.len() {
        output.code = 1;
    }
    Ok(output)
}
