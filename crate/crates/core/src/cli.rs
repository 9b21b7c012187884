//! The `tckit` command line. Exit codes: 0 affirmative or member, 1 negative or
//! not found, 2 error, 3 indeterminate or evidence only.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::acceptance::{self, Status};
use crate::closures::{
    frobenius_closure_ideal, frobenius_closure_membership, frobenius_power_ideal, frobenius_root,
    intersection_chain_membership, tight_closure_certificate, tight_closure_evidence, tight_closure_oracle_with,
    ClosureCertificate, OracleOptions, Verdict,
};
use crate::error::{Error, Result};
use crate::graded_modules::{graded_dual_dimensions, is_m_coprimary, module_frobenius_closure_membership, Coprimary};
use crate::groebner::{self, GbCache};
use crate::ideal::IdealSpec;
use crate::monomial_closure::{briancon_skoda_check, closure_membership, integral_closure_generators, MonomialIdeal};
use crate::order::TermOrder;
use crate::perfect_hull::{
    dcc_check, nonvanishing_witness, parse_formal_sum, parse_frac_polynomial, scalar_multiply, DccVerdict, FormalSum,
};
use crate::poly::Polynomial;
use crate::spec_file::{parse_spec_file, SpecFile};

#[derive(Parser, Debug)]
#[command(name = "tckit", version, about = "Frobenius closure, tight-closure evidence and perfect-hull computations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Replay any emitted certificate before reporting.
    #[arg(long, global = true)]
    verify: bool,
    /// Directory for the on-disk Gröbner basis cache.
    #[arg(long, global = true, env = "TCKIT_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Args, Debug)]
struct Input {
    /// Ring file (`ring { ... }` plus optional blocks).
    file: PathBuf,
    /// Ideal generators, overriding the file's ideal block.
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Args, Debug)]
struct Element {
    #[command(flatten)]
    input: Input,
    /// The element u, overriding the file.
    #[arg(long)]
    u: Option<String>,
    #[arg(long, default_value_t = 4)]
    e_max: u32,
}

#[derive(Args, Debug)]
struct HullInput {
    /// File with a `formal_sum` block.
    file: Option<PathBuf>,
    /// Formal sum text, used when no file is given.
    #[arg(long)]
    sum: Option<String>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value = "x1,x2")]
    vars: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of the ideal plus the ring relations.
    Gb(Input),
    /// Frobenius power I^[p^e].
    FrobPower {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        e: u32,
    },
    /// Frobenius root I^[1/p^e] (polynomial rings only).
    FrobRoot {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        e: u32,
    },
    /// Search for u^q in I^[q] for q up to p^e_max.
    FcMember(Element),
    /// The Frobenius closure chain of the ideal.
    FcIdeal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        e_max: u32,
    },
    /// Tight-closure evidence c u^q in I^[q] for each q.
    TcEvidence {
        #[command(flatten)]
        element: Element,
        /// Test element; defaults to the last variable.
        #[arg(long)]
        c: Option<String>,
    },
    /// Tight-closure verdict through the oracle rule table.
    TcOracle {
        #[command(flatten)]
        element: Element,
        #[arg(long)]
        c: Option<String>,
    },
    /// Frobenius-closure membership in I + m^k for k up to k_max.
    ChainMember {
        #[command(flatten)]
        element: Element,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
    /// Frobenius-closure membership for a module (file with a module block).
    ModuleFc {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        e_max: u32,
    },
    /// Whether M/N is killed by a power of m.
    Coprimary {
        file: PathBuf,
        #[arg(long, default_value_t = crate::graded_modules::DEFAULT_COPRIMARY_CAP)]
        cap: u32,
    },
    /// Dimensions of the graded pieces of R^{1/q}/m^n R^{1/q}.
    DualDims {
        file: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// Integral closure of a monomial ideal, or membership of a monomial.
    IcMonomial {
        #[arg(long)]
        ideal: String,
        /// Exponent vector, e.g. `1,1`.
        #[arg(long)]
        u: Option<String>,
    },
    /// Briançon–Skoda containment for a monomial ideal.
    BsCheck {
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// DCC verdict for the support of a formal sum.
    HullDcc(HullInput),
    /// Formal product s·f with the kill rule.
    HullMul {
        #[command(flatten)]
        input: HullInput,
        #[arg(long)]
        s: String,
        #[arg(long = "E", default_value_t = 32)]
        e_trunc: u32,
    },
    /// The term of x2^t·f that survives for the pathological f.
    HullWitness {
        #[arg(long)]
        t: u32,
        #[arg(long = "E", default_value_t = 32)]
        e_trunc: u32,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        item: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliVerdict {
    Ok,
    Member,
    NotFound,
    NonMember,
    EvidenceOnly,
    EvidenceAgainst,
    Stabilized,
    NotStabilized,
    Pass,
    Fail,
    Indeterminate,
    Yes,
    No,
    Unknown,
}

impl CliVerdict {
    pub fn exit_code(self) -> i32 {
        use CliVerdict::*;
        match self {
            Ok | Member | Stabilized | Pass | Yes => 0,
            NotFound | NonMember | EvidenceAgainst | Fail | No => 1,
            EvidenceOnly | NotStabilized | Indeterminate | Unknown => 3,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tckit: u32,
    pub command: String,
    pub verdict: CliVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_ms: u64,
    #[serde(skip)]
    text: Vec<String>,
}

impl Report {
    fn new(verdict: CliVerdict, result: Value, text: Vec<String>) -> Self {
        Report {
            tckit: 1,
            command: String::new(),
            verdict,
            provenance: None,
            result,
            certificate: None,
            verified: None,
            notes: Vec::new(),
            timing_ms: 0,
            text,
        }
    }

    fn with_certificate(mut self, cert: Option<&ClosureCertificate>) -> Self {
        self.certificate = cert.map(ClosureCertificate::to_json);
        self
    }
}

fn load(input: &Input) -> Result<(SpecFile, IdealSpec)> {
    let spec = parse_spec_file(&input.file)?;
    let ideal = match (&input.ideal, &spec.ideal) {
        (Some(s), _) => IdealSpec::parse(&spec.ring, s)?,
        (None, Some(i)) => i.clone(),
        (None, None) => return Err(Error::Invalid("no ideal: pass --ideal or add an ideal block".into())),
    };
    Ok((spec, ideal))
}

fn load_element(el: &Element) -> Result<(SpecFile, IdealSpec, Polynomial)> {
    let (spec, ideal) = load(&el.input)?;
    let u = match (&el.u, &spec.u) {
        (Some(s), _) => Polynomial::parse(&spec.ring, s)?,
        (None, Some(u)) => u.clone(),
        (None, None) => return Err(Error::Invalid("no element: pass --u or set u in the ideal block".into())),
    };
    Ok((spec, ideal, u))
}

fn test_element(spec: &SpecFile, c: &Option<String>) -> Result<Polynomial> {
    match c {
        Some(s) => Polynomial::parse(&spec.ring, s),
        None => Ok(Polynomial::variable(&spec.ring, spec.ring.arity() - 1)),
    }
}

fn strs(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

fn load_hull(h: &HullInput) -> Result<(Vec<String>, FormalSum)> {
    if let Some(path) = &h.file {
        let spec = parse_spec_file(path)?;
        let f = spec.formal_sum.ok_or_else(|| Error::Invalid("file has no formal_sum block".into()))?;
        return Ok((f.names, f.sum));
    }
    let names: Vec<String> = h.vars.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let src = h.sum.as_deref().ok_or_else(|| Error::Invalid("pass a file or --sum".into()))?;
    Ok((names.clone(), parse_formal_sum(src, h.p, &names)?))
}

fn not_found(e_max: u32) -> String {
    format!("not found up to e_max = {e_max}")
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Gb(input) => {
            let (spec, ideal) = load(input)?;
            let n = spec.ring.arity();
            let order = match cli.order {
                OrderArg::Grevlex => TermOrder::grevlex(n),
                OrderArg::Lex => TermOrder::lex(n),
            };
            let gb = groebner::basis_with_order(&ideal, &order)?;
            let basis = strs(gb.basis());
            Ok(Report::new(CliVerdict::Ok, json!({ "order": order.to_string(), "basis": basis }), basis.clone()))
        }
        Command::FrobPower { input, e } => {
            let (_, ideal) = load(input)?;
            let out = strs(frobenius_power_ideal(&ideal, *e)?.generators());
            Ok(Report::new(CliVerdict::Ok, json!({ "e": e, "generators": out }), vec![format!("({})", out.join(", "))]))
        }
        Command::FrobRoot { input, e } => {
            let (_, ideal) = load(input)?;
            let out = strs(frobenius_root(&ideal, *e)?.generators());
            Ok(Report::new(CliVerdict::Ok, json!({ "e": e, "generators": out }), vec![format!("({})", out.join(", "))]))
        }
        Command::FcMember(el) => {
            let (_, ideal, u) = load_element(el)?;
            Ok(match frobenius_closure_membership(&u, &ideal, el.e_max)? {
                Some(cert) => Report::new(
                    CliVerdict::Member,
                    json!({ "e": cert.e }),
                    vec![format!("{u} is in the Frobenius closure: u^q in I^[q] at e = {}", cert.e)],
                )
                .with_certificate(Some(&cert)),
                None => Report::new(CliVerdict::NotFound, json!({ "e_max": el.e_max }), vec![not_found(el.e_max)]),
            })
        }
        Command::FcIdeal { input, e_max } => {
            let (_, ideal) = load(input)?;
            let fc = frobenius_closure_ideal(&ideal, *e_max)?;
            let gens = strs(groebner::basis(&fc.ideal)?.basis());
            let verdict = if fc.stabilized { CliVerdict::Stabilized } else { CliVerdict::NotStabilized };
            let mut text = vec![format!("({})", gens.join(", "))];
            text.push(if fc.stabilized {
                format!("chain repeated at e = {} (heuristic stop)", fc.e_stop)
            } else {
                format!("chain still growing at e_max = {e_max}")
            });
            Ok(Report::new(verdict, json!({ "generators": gens, "stabilized": fc.stabilized, "e_stop": fc.e_stop }), text))
        }
        Command::TcEvidence { element, c } => {
            let (spec, ideal, u) = load_element(element)?;
            let c = test_element(&spec, c)?;
            let ev = tight_closure_evidence(&u, &ideal, &c, element.e_max)?;
            let text = ev
                .passes
                .iter()
                .enumerate()
                .map(|(e, ok)| format!("e = {e}: {}", if *ok { "c u^q in I^[q]" } else { "fails" }))
                .collect();
            let verdict = if ev.all_pass() { CliVerdict::EvidenceOnly } else { CliVerdict::EvidenceAgainst };
            let cert = tight_closure_certificate(&u, &ideal, &c, element.e_max)?;
            let mut r = Report::new(verdict, json!({ "test_element": c.to_string(), "passes": ev.passes }), text)
                .with_certificate(cert.as_ref());
            r.provenance = Some("evidence-only".into());
            Ok(r)
        }
        Command::TcOracle { element, c } => {
            let (spec, ideal, u) = load_element(element)?;
            let opts = OracleOptions {
                e_max: element.e_max,
                test_element: c.as_ref().map(|_| test_element(&spec, c)).transpose()?,
            };
            let rep = tight_closure_oracle_with(&u, &ideal, &opts)?;
            let verdict = match rep.verdict {
                Verdict::Member => CliVerdict::Member,
                Verdict::NonMember => CliVerdict::NonMember,
                Verdict::EvidenceOnly => CliVerdict::EvidenceOnly,
            };
            let mut text = vec![format!("provenance: {}", rep.provenance)];
            if let Some(ev) = &rep.evidence {
                text.push(format!("evidence with c = {}: {:?}", ev.test_element, ev.passes));
            }
            let result = json!({
                "rule": rep.rule.as_ref().map(|r| r.name),
                "closure": rep.closure.as_ref().map(|c| strs(c.ideal.generators())),
                "evidence": rep.evidence.as_ref().map(|e| json!({ "test_element": e.test_element.to_string(), "passes": e.passes })),
            });
            let mut r = Report::new(verdict, result, text).with_certificate(rep.certificate.as_ref());
            r.provenance = Some(rep.provenance);
            r.notes = rep.notes;
            Ok(r)
        }
        Command::ChainMember { element, k_max } => {
            let (_, ideal, u) = load_element(element)?;
            let steps = intersection_chain_membership(&u, &ideal, *k_max, element.e_max)?;
            let rows: Vec<Value> =
                steps.iter().map(|s| json!({ "k": s.k, "e": s.certificate.as_ref().map(|c| c.e) })).collect();
            let text = steps
                .iter()
                .map(|s| match &s.certificate {
                    Some(c) => format!("k = {}: member at e = {}", s.k, c.e),
                    None => format!("k = {}: {}", s.k, not_found(element.e_max)),
                })
                .collect();
            let all = steps.iter().all(|s| s.certificate.is_some());
            Ok(Report::new(if all { CliVerdict::Member } else { CliVerdict::NotFound }, json!({ "steps": rows }), text))
        }
        Command::ModuleFc { file, e_max } => {
            let spec = parse_spec_file(file)?;
            let m = spec.module.ok_or_else(|| Error::Invalid("file has no module block".into()))?;
            let n = m.submodule.ok_or_else(|| Error::Invalid("module block needs `submodule`".into()))?;
            let u = m.element.ok_or_else(|| Error::Invalid("module block needs `element`".into()))?;
            Ok(match module_frobenius_closure_membership(&u, &n, &m.module, *e_max)? {
                Some(cert) => Report::new(
                    CliVerdict::Member,
                    json!({ "e": cert.e }),
                    vec![format!("u^q in N^[q]_M at e = {}", cert.e)],
                )
                .with_certificate(Some(&cert)),
                None => Report::new(CliVerdict::NotFound, json!({ "e_max": e_max }), vec![not_found(*e_max)]),
            })
        }
        Command::Coprimary { file, cap } => {
            let spec = parse_spec_file(file)?;
            let m = spec.module.ok_or_else(|| Error::Invalid("file has no module block".into()))?;
            let n = m.submodule.ok_or_else(|| Error::Invalid("module block needs `submodule`".into()))?;
            Ok(match is_m_coprimary(&m.module, &n, *cap)? {
                Coprimary::Yes { n } => {
                    Report::new(CliVerdict::Yes, json!({ "n": n }), vec![format!("m^{n} M is contained in N")])
                }
                Coprimary::No { ray } => Report::new(
                    CliVerdict::No,
                    json!({ "ray": ray }),
                    vec![match ray {
                        Some((pos, var)) => format!("M/N is infinite along variable {var} in position {pos}"),
                        None => "M/N is finite but not killed by any power of m".into(),
                    }],
                ),
                Coprimary::Unknown => {
                    Report::new(CliVerdict::Unknown, json!({ "cap": cap }), vec![format!("no verdict up to m^{cap}")])
                }
            })
        }
        Command::DualDims { file, q, n } => {
            let spec = parse_spec_file(file)?;
            let dims = graded_dual_dimensions(&spec.ring, *q, *n)?;
            let text = dims.iter().map(|(j, d)| format!("dim V_-{j} = {d}")).collect();
            let rows: Vec<Value> = dims.iter().map(|(j, d)| json!({ "j": j, "dim": d })).collect();
            Ok(Report::new(CliVerdict::Ok, json!({ "q": q, "n": n, "dims": rows }), text))
        }
        Command::IcMonomial { ideal, u } => {
            let (names, ideal) = MonomialIdeal::parse_infer(ideal)?;
            match u {
                Some(a) => {
                    let a = a
                        .split(',')
                        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad exponent `{s}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    let inside = closure_membership(&a, &ideal)?;
                    let verdict = if inside { CliVerdict::Member } else { CliVerdict::NonMember };
                    Ok(Report::new(verdict, json!({ "member": inside }), vec![]))
                }
                None => {
                    let cl = integral_closure_generators(&ideal)?;
                    let s = cl.display_with(&names);
                    Ok(Report::new(CliVerdict::Ok, json!({ "vars": names, "closure": s }), vec![s]))
                }
            }
        }
        Command::BsCheck { ideal, k } => {
            let (names, ideal) = MonomialIdeal::parse_infer(ideal)?;
            let rep = briancon_skoda_check(&ideal, *k)?;
            let verdict = if rep.pass { CliVerdict::Pass } else { CliVerdict::Fail };
            let mut text = vec![format!("closure of I^{} has {} generators", rep.d as u32 + k, rep.closure_generators.len())];
            if let Some(c) = &rep.counterexample {
                text.push(format!("counterexample exponent {c:?}"));
            }
            Ok(Report::new(verdict, json!({ "vars": names, "report": rep }), text))
        }
        Command::HullDcc(h) => {
            let (names, f) = load_hull(h)?;
            let verdict = dcc_check(&f.support())?;
            Ok(match verdict {
                DccVerdict::Pass { minimal, antichains, increasing } => {
                    let mins: Vec<String> = minimal.iter().map(|v| v.monomial_string(&names)).collect();
                    Report::new(
                        CliVerdict::Pass,
                        json!({ "minimal": mins, "antichain_families": antichains, "increasing_families": increasing }),
                        vec![format!("DCC holds; finite minimal elements: {}", mins.join(", "))],
                    )
                }
                DccVerdict::Fail { family, chain } => {
                    let c: Vec<String> = chain.iter().map(|v| v.to_string()).collect();
                    Report::new(
                        CliVerdict::Fail,
                        json!({ "family": family, "chain": c }),
                        vec![format!("descending chain {}", c.join(" > "))],
                    )
                }
                DccVerdict::Indeterminate => Report::new(CliVerdict::Indeterminate, Value::Null, vec![]),
            })
        }
        Command::HullMul { input, s, e_trunc } => {
            let (names, f) = load_hull(input)?;
            let s = parse_frac_polynomial(s, f.p(), &names)?;
            let prod = scalar_multiply(&s, &f, *e_trunc)?;
            let out = prod.sum.display_with(&names);
            Ok(Report::new(CliVerdict::Ok, json!({ "product": out, "exact": prod.exact }), vec![
                out.clone(),
                format!("exact: {}", prod.exact),
            ]))
        }
        Command::HullWitness { t, e_trunc, p } => {
            let (v, count) = nonvanishing_witness(*t, *e_trunc, *p)?;
            let names = vec!["x1".to_string(), "x2".to_string()];
            let s = v.monomial_string(&names);
            Ok(Report::new(CliVerdict::Ok, json!({ "survivor": s, "count": count }), vec![
                format!("survivor {s}"),
                format!("{count} surviving terms up to E = {e_trunc}"),
            ]))
        }
        Command::Selftest { seed, item } => {
            let outcomes = match item {
                Some(i) => vec![acceptance::run_item(*i, *seed)],
                None => acceptance::run_all(*seed),
            };
            let failed = outcomes.iter().any(|o| o.status == Status::Fail);
            let text = outcomes.iter().map(|o| o.to_string()).collect();
            Ok(Report::new(if failed { CliVerdict::Fail } else { CliVerdict::Pass }, json!({ "items": outcomes }), text))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gb(_) => "gb",
        Command::FrobPower { .. } => "frob-power",
        Command::FrobRoot { .. } => "frob-root",
        Command::FcMember(_) => "fc-member",
        Command::FcIdeal { .. } => "fc-ideal",
        Command::TcEvidence { .. } => "tc-evidence",
        Command::TcOracle { .. } => "tc-oracle",
        Command::ChainMember { .. } => "chain-member",
        Command::ModuleFc { .. } => "module-fc",
        Command::Coprimary { .. } => "coprimary",
        Command::DualDims { .. } => "dual-dims",
        Command::IcMonomial { .. } => "ic-monomial",
        Command::BsCheck { .. } => "bs-check",
        Command::HullDcc(_) => "hull-dcc",
        Command::HullMul { .. } => "hull-mul",
        Command::HullWitness { .. } => "hull-witness",
        Command::Selftest { .. } => "selftest",
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    if let Some(dir) = &cli.cache_dir {
        GbCache::global().set_dir(Some(dir));
    }
    let name = command_name(&cli.command);
    let start = Instant::now();
    let result = execute(&cli).and_then(|mut r| {
        if cli.verify {
            if let Some(c) = &r.certificate {
                let ok = ClosureCertificate::from_json(c)?.verify()?;
                r.verified = Some(ok);
                if !ok {
                    return Err(Error::Invalid("emitted certificate failed verification".into()));
                }
            }
        }
        Ok(r)
    });
    match result {
        Ok(mut r) => {
            r.command = name.into();
            r.timing_ms = start.elapsed().as_millis() as u64;
            let code = r.verdict.exit_code();
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            } else {
                let v = serde_json::to_value(r.verdict).expect("verdict serializes");
                let _ = writeln!(out, "verdict: {}", v.as_str().unwrap_or("?"));
                if let Some(p) = &r.provenance {
                    if !r.text.iter().any(|l| l.starts_with("provenance")) {
                        let _ = writeln!(out, "provenance: {p}");
                    }
                }
                for line in r.text.iter().chain(&r.notes) {
                    let _ = writeln!(out, "{line}");
                }
                if let Some(ok) = r.verified {
                    let _ = writeln!(out, "certificate: {}", if ok { "verified" } else { "FAILED" });
                }
                if let (Some(c), false) = (&r.certificate, cli.verify) {
                    let _ = writeln!(out, "certificate: {}", serde_json::to_string(c).expect("certificate serializes"));
                }
            }
            code
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "tckit": 1, "command": name, "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
