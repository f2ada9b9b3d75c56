//! The group `Γ = <a, b, x, y, z | [a,x], [b,y], [ab,z], [x,y], [x,z], [y,z],
//! [ax,by], [ax,abz], [by,abz]>`, the bundled derivation traces showing that
//! `<a, b> ≤ Γ` has class 2, and the pipeline proving that
//! `<a, b | [u^m, v^m], [u^n, v^n] for u, v in {a, b, ab} distinct>` is `Z x Z`
//! for coprime `m, n`.

use std::sync::OnceLock;

use num_integer::Integer;
use serde::Serialize;

use super::nq2::{nq2_eval, nq2_quotient_c_order};
use super::presentation::{
    check_certificate, check_trace, parse_trace, Certificate, Presentation, Validity,
};
use super::word::{apply_substitution, Alphabet, FreeWord};
use super::FreeGrpError;

const RELATORS: [&str; 9] = [
    "[a,x]", "[b,y]", "[ab,z]", "[x,y]", "[x,z]", "[y,z]", "[ax,by]", "[ax,abz]", "[by,abz]",
];

macro_rules! traces {
    ($($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!("../../data/traces/", $name, ".trace")))),*]
    };
}

/// The bundled traces, in dependency order. Every relator past the ninth in
/// a trace is the conclusion of an earlier trace.
pub const BUNDLED_TRACES: [(&str, &str); 26] = traces![
    "00_sym0",
    "01_sym1",
    "02_sym2",
    "03_sym3",
    "04_sym4",
    "05_sym5",
    "06_sym6",
    "07_sym7",
    "08_sym8",
    "09_ba_xy",
    "10_ab_yx",
    "11_ax_bz",
    "12_a_bzy",
    "13_b_zax",
    "14_b_zm1x",
    "15_b_commaz",
    "16_b_commzm1am1",
    "17_b_commba",
    "18_b_commab",
    "19_a_am1zaby",
    "20_mirror_ax_bz",
    "21_mirror_b_zm1x",
    "22_mirror_b_commaz",
    "23_mirror_b_commzm1am1",
    "24_mirror_b_commba",
    "25_a_commab",
];

pub fn gamma_alphabet() -> Alphabet {
    Alphabet::new(["a", "b", "x", "y", "z"]).expect("valid names")
}

pub fn gamma_presentation() -> Presentation {
    let al = gamma_alphabet();
    let rels = RELATORS
        .iter()
        .map(|r| al.parse(r).expect("fixed relator"))
        .collect();
    Presentation::new(al, rels).expect("nonempty relators")
}

/// `a <-> b`, `x <-> y`, `z -> z^a`, as images of the generators of `Γ`.
pub fn phi() -> Vec<FreeWord> {
    let al = gamma_alphabet();
    ["b", "a", "y", "x", "z^a"]
        .iter()
        .map(|s| al.parse(s).expect("fixed image"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub name: &'static str,
    /// The word shown trivial, printed over `a, b, x, y, z`.
    pub conclusion: String,
    pub steps: usize,
    pub valid: bool,
    /// Length of the certificate over the nine relators of `Γ` alone.
    pub certificate_steps: usize,
    pub certificate_valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<TraceEntry>,
    /// Every image of a relator under [`phi`] is a conclusion.
    pub symmetry: bool,
    /// `[a,[a,b]]` and `[b,[a,b]]` are conclusions.
    pub class_two: bool,
    pub problems: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
            && self.symmetry
            && self.class_two
            && self.entries.iter().all(|e| e.valid && e.certificate_valid)
    }
}

/// Checks the bundled suite: each trace replays, its extra relators were
/// derived earlier, and its certificate flattened down to `Γ`'s relators
/// checks by free reduction alone.
pub fn check_bundled_traces() -> SuiteReport {
    let gamma = gamma_presentation();
    let base = gamma.relators().len();
    let al = gamma.alphabet();
    let mut entries = Vec::new();
    let mut problems = Vec::new();
    let mut proven: Vec<(FreeWord, Certificate)> = Vec::new();

    for (name, text) in BUNDLED_TRACES {
        let (pres, trace) = match parse_trace(text) {
            Ok(x) => x,
            Err(e) => {
                problems.push(format!("{name}: {e}"));
                continue;
            }
        };
        if pres.alphabet() != al || pres.relators().get(..base) != Some(gamma.relators()) {
            problems.push(format!("{name}: does not start from the relators of Γ"));
            continue;
        }
        if !trace.end.is_empty() {
            problems.push(format!("{name}: does not end at the empty word"));
        }
        let mut expansions = Vec::new();
        for (j, r) in pres.relators().iter().enumerate().skip(base) {
            match proven.iter().find(|(w, _)| w == r) {
                Some((_, c)) => expansions.push(c.clone()),
                None => {
                    problems.push(format!(
                        "{name}: relator {j} was not derived by an earlier trace"
                    ));
                    expansions.push(Certificate::default());
                }
            }
        }
        let valid = check_trace(&pres, &trace) == Validity::Valid;
        let (target, cert) = trace.to_certificate();
        let flat = cert.flatten(base, &expansions);
        let certificate_valid = check_certificate(&gamma, &target, &flat) == Validity::Valid;
        entries.push(TraceEntry {
            name,
            conclusion: al.format(&target),
            steps: trace.steps.len(),
            valid,
            certificate_steps: flat.steps.len(),
            certificate_valid,
        });
        if valid && certificate_valid {
            proven.push((target, flat));
        }
    }

    let is_proven = |w: &FreeWord| proven.iter().any(|(p, _)| p == w);
    let images = phi();
    let symmetry = gamma
        .relators()
        .iter()
        .all(|r| is_proven(&apply_substitution(r, &images).expect("φ covers Γ")));
    let class_two = ["[a,[a,b]]", "[b,[a,b]]"]
        .iter()
        .all(|s| is_proven(&al.parse(s).expect("fixed word")));
    SuiteReport {
        entries,
        symmetry,
        class_two,
        problems,
    }
}

fn bundled_report() -> &'static SuiteReport {
    static REPORT: OnceLock<SuiteReport> = OnceLock::new();
    REPORT.get_or_init(check_bundled_traces)
}

fn check_pair(m: u64, n: u64) -> Result<(), FreeGrpError> {
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        return Err(FreeGrpError::NotCoprime { m, n });
    }
    Ok(())
}

/// `[u^m, v^m]` and `[u^n, v^n]` for `(u, v)` in `(a,b), (a,ab), (b,ab)`,
/// over the alphabet `a, b`.
pub fn its_abelian_relators(m: u64, n: u64) -> Vec<FreeWord> {
    let (a, b) = (FreeWord::gen(0), FreeWord::gen(1));
    let ab = a.mul(&b);
    let mut out = Vec::new();
    for e in [m as i64, n as i64] {
        for (u, v) in [(&a, &b), (&a, &ab), (&b, &ab)] {
            out.push(FreeWord::comm(&u.pow(e), &v.pow(e)));
        }
    }
    out
}

/// `image = [u^k, v^l]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorForm {
    pub u: &'static str,
    pub k: i64,
    pub v: &'static str,
    pub l: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionImage {
    pub relator: String,
    pub image: String,
    pub form: Option<CommutatorForm>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub m: u64,
    pub n: u64,
    pub p: i64,
    pub q: i64,
    pub images: Vec<ExtensionImage>,
}

impl ExtensionReport {
    pub fn valid(&self) -> bool {
        self.images.iter().all(|i| i.ok)
    }
}

/// Least nonnegative `q` with `p m - q n = 1`.
fn bezout(m: u64, n: u64) -> (i64, i64) {
    let (m, n) = (m as i64, n as i64);
    let q = (0..m).find(|q| (q * n + 1) % m == 0).expect("coprime");
    ((q * n + 1) / m, q)
}

/// Finds `(u, k, v, l)` with `w = [u^k, v^l]`, `u, v in {a, b, ab}`, accepting
/// exponents divisible by `m` (or both by `n`) first.
fn commutator_form(w: &FreeWord, m: i64, n: i64) -> Option<(CommutatorForm, bool)> {
    let gamma = nq2_eval(w).ok()?.gamma;
    let bases: [(&'static str, FreeWord, (i64, i64)); 3] = [
        ("a", FreeWord::gen(0), (1, 0)),
        ("b", FreeWord::gen(1), (0, 1)),
        ("ab", FreeWord::gen(0).mul(&FreeWord::gen(1)), (1, 1)),
    ];
    let mut fallback = None;
    for (un, u, (ua, ub)) in &bases {
        for (vn, v, (va, vb)) in &bases {
            let det = ua * vb - ub * va;
            if det == 0 || gamma % det != 0 {
                continue;
            }
            let prod = gamma / det;
            for d in 1..=prod.unsigned_abs() as i64 {
                if prod % d != 0 {
                    continue;
                }
                for k in [d, -d] {
                    let l = prod / k;
                    if FreeWord::comm(&u.pow(k), &v.pow(l)) != *w {
                        continue;
                    }
                    let form = CommutatorForm { u: un, k, v: vn, l };
                    let ok = (k % m == 0 && l % m == 0) || (k % n == 0 && l % n == 0);
                    if ok {
                        return Some((form, true));
                    }
                    fallback.get_or_insert((form, false));
                }
            }
        }
    }
    fallback
}

/// Maps `x -> a^(qn)`, `y -> b^(qn)`, `z -> (ab)^(qn)` and checks that every
/// relator of `Γ` goes to the empty word or to `[u^k, v^l]` with both
/// exponents divisible by `m` or both by `n`.
pub fn verify_extension_map(m: u64, n: u64) -> Result<ExtensionReport, FreeGrpError> {
    check_pair(m, n)?;
    let (p, q) = bezout(m, n);
    let (a, b) = (FreeWord::gen(0), FreeWord::gen(1));
    let e = q * n as i64;
    let map = [a.clone(), b.clone(), a.pow(e), b.pow(e), a.mul(&b).pow(e)];
    let gamma = gamma_presentation();
    let al = gamma.alphabet();
    let images = gamma
        .relators()
        .iter()
        .map(|r| {
            let image = apply_substitution(r, &map).expect("map covers Γ");
            let (form, ok) = if image.is_empty() {
                (None, true)
            } else {
                match commutator_form(&image, m as i64, n as i64) {
                    Some((f, ok)) => (Some(f), ok),
                    None => (None, false),
                }
            };
            ExtensionImage {
                relator: al.format(r),
                image: al.format(&image),
                form,
                ok,
            }
        })
        .collect();
    Ok(ExtensionReport { m, n, p, q, images })
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub m: u64,
    pub n: u64,
    pub stages: Vec<StageReport>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.passed)
    }
}

/// Runs the three stages: the bundled traces (class 2 of `<a, b>` in `Γ`),
/// the extension map `Γ -> G_{m,n}`, and the class-2 quotient of `G_{m,n}`
/// where `[a, b]` must have order 1.
pub fn its_abelian_pipeline(m: u64, n: u64) -> Result<PipelineReport, FreeGrpError> {
    check_pair(m, n)?;
    let suite = bundled_report();
    let certified: usize = suite.entries.iter().map(|e| e.certificate_steps).sum();
    let traces = StageReport {
        name: "gamma-traces",
        passed: suite.passed(),
        detail: if suite.passed() {
            format!(
                "{} traces valid, {certified} conjugates of Γ relators in the flattened certificates",
                suite.entries.len()
            )
        } else {
            let mut bad: Vec<String> = suite.problems.clone();
            bad.extend(
                suite
                    .entries
                    .iter()
                    .filter(|e| !(e.valid && e.certificate_valid))
                    .map(|e| format!("{} invalid", e.name)),
            );
            if !suite.symmetry {
                bad.push("symmetry images not all derived".into());
            }
            if !suite.class_two {
                bad.push("[a,[a,b]] or [b,[a,b]] not derived".into());
            }
            bad.join("; ")
        },
    };
    let ext = verify_extension_map(m, n)?;
    let extension = StageReport {
        name: "extension-map",
        passed: ext.valid(),
        detail: format!(
            "p = {}, q = {}; {} of 9 relator images have the required form",
            ext.p,
            ext.q,
            ext.images.iter().filter(|i| i.ok).count()
        ),
    };
    let c = nq2_quotient_c_order(&its_abelian_relators(m, n))?;
    let quotient = StageReport {
        name: "nq2-quotient",
        passed: c == 1,
        detail: format!("[a,b] has order {c} in the class-2 quotient"),
    };
    Ok(PipelineReport {
        m,
        n,
        stages: vec![traces, extension, quotient],
    })
}
