//! Built-in documents: the normal-form tree families, cycles, and the two
//! worked configurations `fig-ex` and `fig-exx`.

use crate::document::{Entry, EntryKind, FormDocument};
use crate::error::{Error, Result};

/// Fixture names accepted by [`fixture`]; parameterized families show their
/// parameter syntax.
pub const FIXTURE_NAMES: &[&str] =
    &["e6", "dmk:M,K", "janssen-a:N,P", "janssen-b:N,P", "janssen-c:N,P", "cycle:R", "fig-ex", "fig-exx"];

const FIG_EX: &str = "\
# six generators b1..b6 inside a ten-dimensional space
dim 10
labels b1 b2 b3 b4 b5 b6 v1 v2 v3 v4
gens b1 b2 b3 b4 b5 b6
edge v1 b1
edge b1 b5
edge v3 b3
edge v2 b2
edge b2 b6
edge v4 b4
edge b1 b3
edge b1 v3
edge b2 b4
edge b2 b3
edge b2 v4
edge b2 v3
edge b3 b5
edge b3 b6
edge b4 b6
vector c b2+b4+b6
";

const FIG_EXX: &str = "\
# left part {b3, b6, v3} and right part {b1, b2, b4, b5, v1, v2}; cross pairs
# are oriented from the left part
dim 9
labels b1 b2 b3 b4 b5 b6 v1 v2 v3
gens b1 b2 b3 b4 b5 b6
edge v1 b1
edge b1 b4
edge v2 b2
edge b2 b5
edge b1 v2
edge b1 b2
edge b2 b4
edge b4 b5
edge v3 b3
edge b3 b6
arc v3 b2
arc b3 b2
arc b3 b5
arc b6 b5
blocks (b3 b6)(b1 b2 b4 b5)
";

fn document(labels: Vec<String>, edges: &[(usize, usize)]) -> FormDocument {
    let entries = edges
        .iter()
        .map(|&(a, b)| Entry { kind: EntryKind::Edge, from: labels[a].clone(), to: labels[b].clone() })
        .collect();
    FormDocument { dim: labels.len(), gens: labels.clone(), labels, entries, blocks: None, vectors: Vec::new() }
}

fn names(prefix: &str, count: usize) -> impl Iterator<Item = String> + '_ {
    (1..=count).map(move |i| format!("{prefix}{i}"))
}

fn precondition(msg: String) -> Error {
    Error::Precondition(msg)
}

/// The Dynkin tree E₆: x1–x2–x3–x4–x5 with x6 on x3.
pub fn e6() -> FormDocument {
    document(names("x", 6).collect(), &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
}

/// D_{m,k}: chain a1–…–am with leaves c1…ck on am.
pub fn broom(m: usize, k: usize) -> Result<FormDocument> {
    if m == 0 || k == 0 {
        return Err(precondition(format!("dmk needs m >= 1 and k >= 1, found {m},{k}")));
    }
    let labels: Vec<String> = names("a", m).chain(names("c", k)).collect();
    let mut edges: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
    edges.extend((0..k).map(|j| (m - 1, m + j)));
    Ok(document(labels, &edges))
}

/// Chordless cycle x1–…–xr–x1.
pub fn cycle(r: usize) -> Result<FormDocument> {
    if r < 3 {
        return Err(precondition(format!("cycle needs r >= 3, found {r}")));
    }
    let edges: Vec<(usize, usize)> = (0..r).map(|i| (i, (i + 1) % r)).collect();
    Ok(document(names("x", r).collect(), &edges))
}

/// Family A: a1…a_{2n−1}, c1…c_{p+1}; chain a2–…–a_{2n−1}–c1, a1 on a4,
/// c2…c_{p+1} on a_{2n−1}. Dimension 2n + p; n = 3, p = 0 is E₆.
pub fn janssen_a(n: usize, p: usize) -> Result<FormDocument> {
    if n < 3 {
        return Err(precondition(format!("janssen-a needs n >= 3, found {n}")));
    }
    let a = 2 * n - 1;
    let labels: Vec<String> = names("a", a).chain(names("c", p + 1)).collect();
    let mut edges: Vec<(usize, usize)> = (2..a).map(|i| (i - 1, i)).collect();
    edges.push((a - 1, a));
    edges.push((3, 0));
    edges.extend((1..=p).map(|j| (a - 1, a + j)));
    Ok(document(labels, &edges))
}

/// Family B: a1…a_{2n−1}, c1…c_{p+1}; chain a3–…–a_{2n−1}–c1, a2 on a6,
/// a1 on a2, c2…c_{p+1} on a_{2n−1}. Dimension 2n + p; needs n ≥ 4.
pub fn janssen_b(n: usize, p: usize) -> Result<FormDocument> {
    if n < 4 {
        return Err(precondition(format!("janssen-b needs n >= 4, found {n}")));
    }
    let a = 2 * n - 1;
    let labels: Vec<String> = names("a", a).chain(names("c", p + 1)).collect();
    let mut edges: Vec<(usize, usize)> = (3..a).map(|i| (i - 1, i)).collect();
    edges.push((a - 1, a));
    edges.push((5, 1));
    edges.push((1, 0));
    edges.extend((1..=p).map(|j| (a - 1, a + j)));
    Ok(document(labels, &edges))
}

/// Family C: a1…a_{2n}, c1…c_p; chain a2–…–a_{2n}–c1, a1 on a5,
/// c2…c_p on a_{2n}. Dimension 2n + p; needs n ≥ 3 and p ≥ 1.
pub fn janssen_c(n: usize, p: usize) -> Result<FormDocument> {
    if n < 3 || p < 1 {
        return Err(precondition(format!("janssen-c needs n >= 3 and p >= 1, found {n},{p}")));
    }
    let a = 2 * n;
    let labels: Vec<String> = names("a", a).chain(names("c", p)).collect();
    let mut edges: Vec<(usize, usize)> = (2..a).map(|i| (i - 1, i)).collect();
    edges.push((a - 1, a));
    edges.push((4, 0));
    edges.extend((1..p).map(|j| (a - 1, a + j)));
    Ok(document(labels, &edges))
}

pub fn fig_ex() -> FormDocument {
    FormDocument::parse(FIG_EX).expect("built-in document parses")
}

pub fn fig_exx() -> FormDocument {
    FormDocument::parse(FIG_EXX).expect("built-in document parses")
}

fn params<const N: usize>(name: &str, text: &str) -> Result<[usize; N]> {
    let values: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Semantic(format!("invalid parameters `{text}` for fixture `{name}`")))?;
    values.try_into().map_err(|_| Error::Semantic(format!("fixture `{name}` takes {N} parameter(s)")))
}

/// Looks up a fixture by name, e.g. `dmk:3,2` or `janssen-a:4,1`.
pub fn fixture(text: &str) -> Result<FormDocument> {
    let (name, args) = text.split_once(':').unwrap_or((text, ""));
    let unknown = || Error::Semantic(format!("unknown fixture `{text}`; known: {}", FIXTURE_NAMES.join(", ")));
    match (name, args.is_empty()) {
        ("e6", true) => Ok(e6()),
        ("fig-ex", true) => Ok(fig_ex()),
        ("fig-exx", true) => Ok(fig_exx()),
        ("dmk", false) => {
            let [m, k] = params(name, args)?;
            broom(m, k)
        }
        ("cycle", false) => {
            let [r] = params(name, args)?;
            cycle(r)
        }
        ("janssen-a", false) => {
            let [n, p] = params(name, args)?;
            janssen_a(n, p)
        }
        ("janssen-b", false) => {
            let [n, p] = params(name, args)?;
            janssen_b(n, p)
        }
        ("janssen-c", false) => {
            let [n, p] = params(name, args)?;
            janssen_c(n, p)
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{contains_e6, e6_graph};

    #[test]
    fn fig_ex_integrity() {
        let doc = fig_ex();
        assert_eq!(doc.labels.len(), 10);
        assert_eq!(doc.gens.len(), 6);
        assert_eq!(doc.entries.len(), 15);
        assert!(doc.entries.iter().all(|e| e.kind == EntryKind::Edge));
        assert_eq!(FormDocument::parse(&doc.render()).unwrap(), doc);
    }

    #[test]
    fn fig_exx_integrity() {
        let doc = fig_exx();
        assert_eq!(doc.labels.len(), 9);
        assert_eq!(doc.gens.len(), 6);
        assert_eq!(doc.entries.len(), 14);
        let form = doc.form().unwrap();
        let (b2, b3) = (doc.label_index("b2").unwrap(), doc.label_index("b3").unwrap());
        assert!(!form.entry(b2, b3));
        assert!(form.entry(b3, b2));
        assert!(doc.block_decomposition().unwrap().is_some());
    }

    #[test]
    fn family_shapes() {
        let e6_doc = janssen_a(3, 0).unwrap();
        let g = e6_doc.generating_set().unwrap();
        assert_eq!(g.graph().canonical(), e6_graph().canonical());
        for (n, p) in [(3, 1), (4, 0), (4, 2)] {
            let g = janssen_a(n, p).unwrap().generating_set().unwrap();
            assert_eq!(g.len(), 2 * n + p);
            assert!(g.graph().is_tree());
        }
        let g = janssen_b(4, 1).unwrap().generating_set().unwrap();
        assert_eq!(g.len(), 9);
        assert!(g.graph().is_tree());
        let g = janssen_c(3, 1).unwrap().generating_set().unwrap();
        assert!(g.graph().is_tree());
        assert!(contains_e6(g.graph()).is_some());
        assert!(janssen_b(3, 0).is_err());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(fixture("dmk:3,2").unwrap().dim, 5);
        assert_eq!(fixture("cycle:5").unwrap().entries.len(), 5);
        assert!(fixture("dmk:3").is_err());
        assert!(fixture("nope").is_err());
        assert!(fixture("e6:1").is_err());
    }
}
