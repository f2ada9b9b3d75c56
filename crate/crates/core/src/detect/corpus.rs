use std::sync::OnceLock;

use crate::constructions::{build_w, cyclic, heisenberg3, holomorph_cyclic, parse_group_spec};
use crate::fingroup::{commutator_subgroup, quotient, GroupHandle, Subgroup};

/// Bumped whenever the member list below changes.
pub const CORPUS_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: GroupHandle,
}

/// `Z/n` for `n <= 24`, `H3`, `hol(7)`, `hol(9)`, `W`, three quotients of
/// `W`, and `Z/n x| Z/2` by inversion for `3 <= n <= 12`.
pub fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus)
}

fn entry(name: impl Into<String>, group: GroupHandle) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        group,
    }
}

fn build_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = (1..=24)
        .map(|n| entry(format!("Z({n})"), cyclic(n)))
        .collect();
    out.push(entry("heis3", heisenberg3()));
    out.push(entry("hol(7)", holomorph_cyclic(7)));
    out.push(entry("hol(9)", holomorph_cyclic(9)));

    let w = build_w();
    let g = w.group().clone();
    let n = w.n();
    let nk = commutator_subgroup(&n, &w.heisenberg_part());
    let derived = commutator_subgroup(&Subgroup::full(&g), &Subgroup::full(&g));
    for (label, sub) in [("N", &n), ("[N,H3]", &nk), ("W'", &derived)] {
        let (q, _) = quotient(&g, sub).expect("normal in W");
        let name = format!("W4374/{label}");
        out.push(entry(name.clone(), q.renamed(name)));
    }
    out.push(entry("W4374", g));

    for n in 3..=12 {
        let spec = format!("sd(Z({n}),Z(2); t=<({})>)", n - 1);
        let d = parse_group_spec(&spec).expect("inversion is an automorphism");
        out.push(entry(spec, d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders() {
        let c = corpus();
        assert_eq!(c.len(), 24 + 3 + 4 + 10);
        let order = |name: &str| c.iter().find(|e| e.name == name).unwrap().group.order();
        assert_eq!(order("W4374"), 4374);
        assert_eq!(order("W4374/N"), 54);
        assert_eq!(order("W4374/[N,H3]"), 162);
        assert_eq!(order("W4374/W'"), 18);
        assert_eq!(order("sd(Z(12),Z(2); t=<(11)>)"), 24);
    }
}
