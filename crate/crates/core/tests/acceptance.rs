//! Acceptance criteria 1 to 11. Prints one line per criterion and exits
//! non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use f2orbits::blocks::{predicted_orbit, validate_blocks};
use f2orbits::classify::{quadratic_form, Classifier};
use f2orbits::cosets::{brute_coset_partition, classify_coset, coset_fixed_points, CosetProblem};
use f2orbits::fixtures;
use f2orbits::graph::connected_graphs;
use f2orbits::moves::{basic_move, contains_e6, equivalence_class, recognize, ClassKind, DEFAULT_CLASS_BUDGET};
use f2orbits::orbits::{orbit_partition, v000, DeltaOracle, Domain, OrbitPartition};
use f2orbits::{BilinearForm, F2Vector, GeneratingSet, Subspace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: f2orbits::Error) -> String {
    e.to_string()
}

fn gens(doc: &f2orbits::document::FormDocument) -> GeneratingSet {
    doc.generating_set().expect("fixture builds")
}

fn span_partition(b: &GeneratingSet) -> Result<OrbitPartition, String> {
    orbit_partition(b, &Domain::span_of(b)).map_err(err)
}

/// Classes of `part` not contained in V₀, as sorted bit lists.
fn moving_classes(part: &OrbitPartition, v0: &Subspace) -> BTreeSet<Vec<u64>> {
    part.member_lists()
        .into_iter()
        .filter(|m| !v0.contains(&m[0]))
        .map(|m| m.iter().map(F2Vector::bits).collect())
        .collect()
}

fn grouped<K: Ord>(pairs: impl IntoIterator<Item = (K, u64)>) -> BTreeSet<Vec<u64>> {
    let mut groups: BTreeMap<K, Vec<u64>> = BTreeMap::new();
    for (k, x) in pairs {
        groups.entry(k).or_default().push(x);
    }
    groups.into_values().map(|mut v| {
        v.sort_unstable();
        v
    }).collect()
}

fn random_moves(rng: &mut ChaCha8Rng, b: &GeneratingSet, steps: usize) -> GeneratingSet {
    let mut cur = b.clone();
    for _ in 0..steps {
        let edges = cur.graph().edges();
        let &(p, q) = edges.choose(rng).expect("connected graph has an edge");
        let (c, a) = if rng.gen_bool(0.5) { (p, q) } else { (q, p) };
        cur = basic_move(&cur, c, a).expect("edge endpoints are adjacent");
    }
    cur
}

/// D-type fixtures of dimension at most 9: brooms, cycles and the
/// generating set of fig-ex.
fn dtype_fixtures() -> Vec<(String, GeneratingSet)> {
    let mut out = vec![("dmk:1,1".to_string(), gens(&fixtures::broom(1, 1).unwrap()))];
    for m in 2..=8 {
        for k in 1..=9 - m {
            out.push((format!("dmk:{m},{k}"), gens(&fixtures::broom(m, k).unwrap())));
        }
    }
    for r in 3..=9 {
        out.push((format!("cycle:{r}"), gens(&fixtures::cycle(r).unwrap())));
    }
    out.push(("fig-ex".into(), gens(&fixtures::fig_ex())));
    out.into_iter()
        .filter(|(_, b)| recognize(b).map(|l| l.is_dtype()).unwrap_or(false))
        .collect()
}

fn criterion_1() -> Outcome {
    let b = gens(&fixtures::fig_ex());
    let part = orbit_partition(&b, &Domain::Whole).map_err(err)?;
    let span = b.span();
    let mut fixed_in_u: Vec<String> = part
        .classes()
        .iter()
        .filter(|c| c.size == 1 && span.contains(&c.representative))
        .map(|c| fixtures::fig_ex().describe(&c.representative))
        .collect();
    ensure(part.len() == 52, || format!("{} classes, expected 52", part.len()))?;
    let mut expected = ["0", "b2+b4+b6", "b1+b3+b4+b5", "b1+b2+b3+b5+b6"];
    expected.sort_unstable();
    fixed_in_u.sort_unstable();
    ensure(fixed_in_u == expected, || format!("singletons in U: {}", fixed_in_u.join(", ")))?;
    Ok(format!("52 classes over 2^10; fixed in U: {}", fixed_in_u.join(", ")))
}

fn criterion_2() -> Outcome {
    let b = gens(&fixtures::fig_exx());
    let part = orbit_partition(&b, &Domain::Whole).map_err(err)?;
    ensure(part.len() == 30, || format!("{} classes, expected 30", part.len()))?;
    Ok("30 classes over 2^9".into())
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for m in 2..=6 {
        for k in 1..=4 {
            let b = gens(&fixtures::broom(m, k).unwrap());
            let part = span_partition(&b)?;
            let fixed = part.classes().iter().filter(|c| c.size == 1 && b.fixes(&c.representative)).count();
            let moving = part.len() - fixed;
            let (want_fixed, want_moving) = if m % 2 == 1 { (1 << (k - 1), m.div_ceil(2)) } else { (1 << k, m / 2) };
            ensure(fixed == want_fixed && moving == want_moving, || {
                format!("D({m},{k}): {fixed} fixed / {moving} moving, expected {want_fixed} / {want_moving}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} brooms, fixed and moving counts exact"))
}

fn criterion_4() -> Outcome {
    let mut docs = vec![("e6".to_string(), fixtures::e6())];
    for n in 3..=5 {
        for p in 0..=4 {
            if 2 * n + p <= 10 {
                docs.push((format!("janssen-a:{n},{p}"), fixtures::janssen_a(n, p).unwrap()));
                if n >= 4 {
                    docs.push((format!("janssen-b:{n},{p}"), fixtures::janssen_b(n, p).unwrap()));
                }
                if p >= 1 {
                    docs.push((format!("janssen-c:{n},{p}"), fixtures::janssen_c(n, p).unwrap()));
                }
            }
        }
    }
    let mut e6_sizes = None;
    for (name, doc) in &docs {
        let b = gens(doc);
        let c = Classifier::new(&b).map_err(err)?;
        let part = span_partition(&b)?;
        let brute = moving_classes(&part, c.v0());
        let levels = grouped(
            b.span().members().filter(|x| !c.v0().contains(x)).map(|x| (c.quadratic().eval(&x).unwrap(), x.bits())),
        );
        ensure(brute.len() == 2 && brute == levels, || format!("{name}: {} moving classes", brute.len()))?;
        if name == "e6" {
            let q = quadratic_form(&b).map_err(err)?;
            let mut sizes = [0usize; 2];
            for class in &brute {
                sizes[q.eval(&F2Vector::from_bits(6, class[0]).unwrap()).unwrap() as usize] = class.len();
            }
            e6_sizes = Some(sizes);
        }
    }
    ensure(e6_sizes == Some([27, 36]), || format!("E6 sizes (Q=0, Q=1) = {e6_sizes:?}, expected (27, 36)"))?;
    Ok(format!("{} fixtures split into the two Q level sets; E6: 36 (Q=1), 27 (Q=0)", docs.len()))
}

fn criteria_5_and_6(rng: &mut ChaCha8Rng) -> (Outcome, Outcome) {
    let mut vectors = 0;
    let mut sets = 0;
    let mut level_failure = None;
    for (name, base) in dtype_fixtures() {
        let scrambled = random_moves(rng, &base, 200);
        for (variant, b) in [("", base), (" scrambled", scrambled)] {
            let c = match Classifier::new(&b) {
                Ok(c) => c,
                Err(e) => return (Err(format!("{name}{variant}: {e}")), Err("not evaluated".into())),
            };
            let oracle = DeltaOracle::new(&b).expect("connected alternating basis");
            let moving: Vec<F2Vector> = b.span().members().filter(|x| !c.v0().contains(x)).collect();
            let mut pairs = Vec::new();
            for x in &moving {
                let (want, got) = (oracle.d(x).unwrap().0, c.d_formula(x).unwrap());
                if want != got {
                    return (Err(format!("{name}{variant}, x = {x}: formula {got}, oracle {want}")), Err("not evaluated".into()));
                }
                pairs.push((got, x.bits()));
                vectors += 1;
            }
            let brute = moving_classes(&span_partition(&b).unwrap(), c.v0());
            if grouped(pairs) != brute && level_failure.is_none() {
                level_failure = Some(format!("{name}{variant}: d level sets differ from the orbit partition"));
            }
            sets += 1;
        }
    }
    let five = Ok(format!("{vectors} vectors over {sets} bases (half scrambled by 200 moves)"));
    let six = match level_failure {
        None => Ok(format!("{sets} bases, d level sets equal the orbits on V - V0")),
        Some(f) => Err(f),
    };
    (five, six)
}

fn criterion_7() -> Outcome {
    let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
    ensure(counts == [1, 1, 2, 6, 21, 112], || format!("connected graph counts {counts:?}"))?;
    let mut total = 0;
    let mut classes = 0;
    for n in 2..=6 {
        let graphs = connected_graphs(n);
        let mut class_of = HashMap::new();
        let mut class_label: Vec<ClassKind> = Vec::new();
        let mut label_class: BTreeMap<ClassKind, usize> = BTreeMap::new();
        for g in &graphs {
            let key = g.canonical();
            let id = match class_of.get(&key) {
                Some(&id) => id,
                None => {
                    let id = class_label.len();
                    for member in equivalence_class(g, DEFAULT_CLASS_BUDGET).map_err(err)? {
                        class_of.insert(member, id);
                    }
                    class_label.push(recognize(&GeneratingSet::from_graph(g).unwrap()).map_err(err)?.kind);
                    id
                }
            };
            let kind = recognize(&GeneratingSet::from_graph(g).unwrap()).map_err(err)?.kind;
            ensure(class_label[id] == kind, || format!("n={n}: {kind} in the class of {}", class_label[id]))?;
            ensure(*label_class.entry(kind).or_insert(id) == id, || format!("n={n}: {kind} labels two classes"))?;
        }
        total += graphs.len();
        classes += class_label.len();
    }
    Ok(format!("{total} connected graphs on 2 to 6 vertices, {classes} move classes, labels agree"))
}

fn criterion_8() -> Outcome {
    let e6 = quadratic_form(&gens(&fixtures::e6())).and_then(|q| q.arf()).map_err(err)?;
    ensure(e6, || "Arf(E6) = 0, expected 1".into())?;
    let mut cases = 1;
    for n in 3..=5 {
        for p in 0..=2 {
            let a = quadratic_form(&gens(&fixtures::janssen_a(n, p).unwrap())).and_then(|q| q.arf()).map_err(err)?;
            ensure(a == matches!(n % 4, 2 | 3), || format!("janssen-a:{n},{p}: Arf = {}", a as u8))?;
            cases += 1;
            if n >= 4 {
                let b = quadratic_form(&gens(&fixtures::janssen_b(n, p).unwrap())).and_then(|q| q.arf()).map_err(err)?;
                ensure(b == matches!(n % 4, 0 | 1), || format!("janssen-b:{n},{p}: Arf = {}", b as u8))?;
                cases += 1;
            }
        }
    }
    Ok(format!("Arf(E6) = 1; {cases} family members match the caption parities"))
}

fn criterion_9() -> Outcome {
    let mut deletions = 0;
    let mut fixtures_checked = 0;
    let mut span_failures = Vec::new();
    for (name, b) in dtype_fixtures() {
        let c = Classifier::new(&b).map_err(err)?;
        if b.len() >= 3 {
            match c.v000_from_subgraphs() {
                Ok(assembled) => ensure(assembled == *c.v000(), || format!("{name}: subgraph V000 differs"))?,
                Err(f2orbits::Error::SpanMismatch) => {
                    span_failures.push(format!("{name} (dim V000 = {}, no forbidden subgraph)", c.v000().dim()))
                }
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
        let q = c.v0().quotient_dim(c.v000()).map_err(err)?;
        ensure(q <= 1, || format!("{name}: dim V0/V000 = {q}"))?;
        if matches!(c.label().kind, ClassKind::DType { k, .. } if k >= 2) {
            for u in c.v000().members().filter(|u| !u.is_zero()) {
                let coords = b.expand(&u).map_err(err)?;
                for i in (0..b.len()).filter(|&i| (coords >> i) & 1 == 1) {
                    c.deletion_check(&u, i).map_err(|e| format!("{name}, u = {u}, generator {i}: {e}"))?;
                    deletions += 1;
                }
            }
        }
        fixtures_checked += 1;
    }
    for doc in [fixtures::e6(), fixtures::janssen_a(4, 1).unwrap(), fixtures::janssen_c(3, 2).unwrap()] {
        let b = gens(&doc);
        let c = Classifier::new(&b).map_err(err)?;
        let q = c.v0().quotient_dim(c.v000()).map_err(err)?;
        ensure(q <= 1, || format!("dim V0/V000 = {q} on an E6-type fixture"))?;
    }
    let summary = format!("{fixtures_checked} D-type fixtures, {deletions} deletion triples, quotient bound holds");
    if span_failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; subgraph spanning fails on {}", span_failures.join(", ")))
    }
}

/// Every coset offset of V / U other than U, as least coset members.
fn coset_offsets(u: &Subspace) -> Vec<F2Vector> {
    let n = u.ambient_dim();
    let mut grown = u.clone();
    let mut extra = Vec::new();
    for i in 0..n {
        let e = F2Vector::unit(n, i);
        if !grown.contains(&e) {
            grown = grown.sum(&Subspace::span(n, &[e]).unwrap()).unwrap();
            extra.push(e);
        }
    }
    (1u64..1 << extra.len())
        .map(|c| {
            let v = (0..extra.len()).filter(|&i| (c >> i) & 1 == 1).fold(F2Vector::zero(n), |acc, i| acc + extra[i]);
            u.coset_leader(&v)
        })
        .collect()
}

fn check_cosets(b: &GeneratingSet, label: &str) -> Result<usize, String> {
    let u000 = v000(b).map_err(err)?;
    let offsets = coset_offsets(&b.span());
    for v in &offsets {
        let report = classify_coset(&CosetProblem::new(b.clone(), *v).map_err(err)?).map_err(|e| format!("{label}, v = {v}: {e}"))?;
        let brute = brute_coset_partition(b, v).map_err(err)?;
        ensure(report.agrees_with(&brute), || format!("{label}, v = {v}: {} disagrees", report.branch.name()))?;
        let pairs = u000.basis().iter().any(|w| b.form().pair(v, w).unwrap());
        let fixed = coset_fixed_points(b, v).map_err(err)?;
        ensure(!pairs || fixed.is_empty(), || format!("{label}, v = {v}: emptiness proposition violated"))?;
    }
    Ok(offsets.len())
}

/// Random connected E₆-free graph on `n` vertices plus `extra` coordinates
/// outside the span, with symmetric pairings.
fn random_coset_instance(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Option<GeneratingSet> {
    let dim = n + extra;
    let mut edges = Vec::new();
    for q in 1..dim {
        for p in 0..q {
            let chance = if q < n { 0.4 } else { 0.5 };
            if rng.gen_bool(chance) {
                edges.push((p, q));
            }
        }
    }
    let form = BilinearForm::from_edges(dim, &edges).ok()?;
    let b = GeneratingSet::unlabelled(form, (0..n).map(|i| F2Vector::unit(dim, i)).collect()).ok()?;
    (b.graph().is_connected() && contains_e6(b.graph()).is_none()).then_some(b)
}

fn criterion_10(rng: &mut ChaCha8Rng) -> Outcome {
    let b = gens(&fixtures::fig_ex());
    let fig = check_cosets(&b, "fig-ex")?;
    let mut instances = 0;
    let mut cosets = 0;
    while instances < 40 {
        let n = rng.gen_range(2..=8);
        let extra = rng.gen_range(1..=2);
        if let Some(b) = random_coset_instance(rng, n, extra) {
            cosets += check_cosets(&b, &format!("random instance {instances}"))?;
            instances += 1;
        }
    }
    Ok(format!("{fig} fig-ex cosets and {cosets} cosets of {instances} random E6-free instances agree"))
}

/// Random chained block system: blocks of 2 or 3 generators with symmetric
/// edges inside, arcs only from block i to block i + 1, and up to three extra
/// coordinates with arbitrary pairings.
fn random_block_system(rng: &mut ChaCha8Rng) -> Option<(GeneratingSet, Vec<Vec<usize>>)> {
    let r = rng.gen_range(2..=3);
    let sizes: Vec<usize> = (0..r).map(|_| rng.gen_range(2..=3)).collect();
    let gens_count: usize = sizes.iter().sum();
    let extra = rng.gen_range(0..=12 - gens_count).min(3);
    let dim = gens_count + extra;
    let mut blocks = Vec::new();
    let mut next = 0;
    for s in &sizes {
        blocks.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let mut form = BilinearForm::zero(dim).ok()?;
    for block in &blocks {
        for (i, &p) in block.iter().enumerate() {
            for &q in &block[i + 1..] {
                if rng.gen_bool(0.6) {
                    form.set(p, q, true);
                    form.set(q, p, true);
                }
            }
        }
    }
    for w in blocks.windows(2) {
        for &p in &w[0] {
            for &q in &w[1] {
                if rng.gen_bool(0.4) {
                    form.set(p, q, true);
                }
            }
        }
    }
    for x in gens_count..dim {
        for y in 0..dim {
            if x != y && rng.gen_bool(0.4) {
                form.set(x, y, true);
            }
            if x != y && rng.gen_bool(0.4) {
                form.set(y, x, true);
            }
        }
    }
    let b = GeneratingSet::unlabelled(form, (0..gens_count).map(|i| F2Vector::unit(dim, i)).collect()).ok()?;
    if !b.graph().is_connected() {
        return None;
    }
    validate_blocks(&b, blocks.clone()).ok()?;
    Some((b, blocks))
}

fn check_blocks(b: &GeneratingSet, blocks: Vec<Vec<usize>>, label: &str) -> Result<usize, String> {
    let d = validate_blocks(b, blocks).map_err(|e| format!("{label}: {e}"))?;
    let part = orbit_partition(b, &Domain::Whole).map_err(err)?;
    let mut checked = 0;
    for members in part.member_lists() {
        for x in &members {
            if b.fixes(x) {
                continue;
            }
            let predicted = predicted_orbit(&d, x).map_err(|e| format!("{label}, x = {x}: {e}"))?;
            ensure(predicted.members == members, || format!("{label}, x = {x}: prediction differs"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_11(rng: &mut ChaCha8Rng) -> Outcome {
    let doc = fixtures::fig_exx();
    let d = doc.block_decomposition().map_err(err)?.expect("fig-exx declares blocks");
    let fig = check_blocks(d.generating_set(), d.blocks().to_vec(), "fig-exx")?;
    let mut systems = 0;
    let mut vectors = 0;
    while systems < 50 {
        if let Some((b, blocks)) = random_block_system(rng) {
            vectors += check_blocks(&b, blocks, &format!("random system {systems}"))?;
            systems += 1;
        }
    }
    Ok(format!("{fig} fig-exx vectors and {vectors} vectors of {systems} random systems match"))
}

struct Line {
    id: usize,
    title: &'static str,
    limit: Duration,
    elapsed: Duration,
    outcome: Outcome,
}

impl Line {
    fn pass(&self) -> bool {
        self.outcome.is_ok() && self.elapsed <= self.limit
    }

    fn print(&self) {
        let verdict = if self.pass() { "pass" } else { "FAIL" };
        let detail = match &self.outcome {
            Ok(s) => s.clone(),
            Err(s) => s.clone(),
        };
        println!(
            "criterion {:>2}  [{verdict}]  {:<28} {detail}  ({:.2} s, limit {} s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
    }
}

fn timed(id: usize, title: &'static str, limit_s: u64, f: impl FnOnce() -> Outcome) -> Line {
    let start = Instant::now();
    let outcome = f();
    Line { id, title, limit: Duration::from_secs(limit_s), elapsed: start.elapsed(), outcome }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut lines = vec![
        timed(1, "fig-ex orbit count", 5, criterion_1),
        timed(2, "fig-exx orbit count", 5, criterion_2),
        timed(3, "broom count corollaries", 60, criterion_3),
        timed(4, "two-orbit theorem", 10, criterion_4),
    ];
    for line in &lines {
        line.print();
    }
    let start = Instant::now();
    let (five, six) = criteria_5_and_6(&mut rng);
    let elapsed = start.elapsed();
    let more = [
        Line { id: 5, title: "d formula vs oracle", limit: Duration::from_secs(120), elapsed, outcome: five },
        Line { id: 6, title: "level-set theorem", limit: Duration::from_secs(120), elapsed, outcome: six },
    ];
    for line in &more {
        line.print();
    }
    lines.extend(more);
    let rest = [
        timed(7, "recognition ground truth", 120, criterion_7),
        timed(8, "Arf regression", 10, criterion_8),
        timed(9, "V000 theorems", 60, criterion_9),
        timed(10, "coset theorems", 120, || criterion_10(&mut rng)),
    ];
    for line in &rest {
        line.print();
    }
    lines.extend(rest);
    let eleven = timed(11, "block theorem", 60, || criterion_11(&mut rng));
    eleven.print();
    lines.push(eleven);

    let failed = lines.iter().filter(|l| !l.pass()).count();
    println!("acceptance: {} criteria, {failed} failed", lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
