//! Property suites run against a document: randomized checks seeded from a
//! caller-supplied seed, plus exhaustive sweeps where the domain is small.
//!
//! Each suite only emits the checks whose preconditions the document meets;
//! a check that cannot run is omitted rather than reported as passing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::{path_lemma_check, predicted_orbit, BlockDecomposition};
use crate::classify::{broom_invariant, gamma_invariance_check, quadratic_form, Classifier};
use crate::cosets::{brute_coset_partition, classify_coset, CosetProblem};
use crate::document::FormDocument;
use crate::error::{Error, Result};
use crate::f2::{mask, radical, symplectic_basis, F2Vector, Subspace};
use crate::graph::{connected_graphs, ForbiddenKind, GeneratingSet, Graph};
use crate::moves::{basic_move, contains_e6, equivalence_class, recognize, ClassKind, DEFAULT_CLASS_BUDGET};
use crate::orbits::{fixed_points, orbit_partition, transvect, DeltaOracle, Domain, OrbitPartition};
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::Semantic(format!("unknown level `{s}`; expected quick or full"))),
        }
    }
}

struct Budget {
    trials: usize,
    /// Largest span dimension enumerated exhaustively.
    span_dim: usize,
    /// Largest span dimension handed to the exact d oracle.
    oracle_dim: usize,
    sweep_vertices: usize,
    move_steps: usize,
    cosets: usize,
}

impl Budget {
    fn of(level: Level) -> Self {
        match level {
            Level::Quick => Budget { trials: 64, span_dim: 12, oracle_dim: 7, sweep_vertices: 5, move_steps: 4, cosets: 16 },
            Level::Full => Budget { trials: 512, span_dim: 16, oracle_dim: 9, sweep_vertices: 6, move_steps: 12, cosets: 256 },
        }
    }
}

/// Largest domain enumerated by the whole-space and block suites.
const WHOLE_SPACE_DIM: usize = 16;

type Outcome = Result<(bool, String)>;

struct Run {
    b: GeneratingSet,
    rng: ChaCha8Rng,
    seed: u64,
    budget: Budget,
    checks: Vec<Check>,
}

impl Run {
    fn record(&mut self, name: &str, outcome: Outcome) {
        let check = match outcome {
            Ok((pass, detail)) => Check::new(name, pass, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        };
        self.checks.push(check);
    }

    fn random_ambient(&mut self) -> u64 {
        self.rng.gen::<u64>() & mask(self.b.dim())
    }

    fn random_span(&mut self) -> u64 {
        let c = self.rng.gen::<u64>() & mask(self.b.len());
        self.b.combine_bits(c)
    }

    fn vector(&self, bits: u64) -> F2Vector {
        F2Vector::raw(self.b.dim(), bits)
    }
}

/// Runs every applicable suite on `doc`.
pub fn verify_document(doc: &FormDocument, level: Level, seed: u64) -> Result<Vec<Check>> {
    let b = doc.generating_set()?;
    let blocks = doc.block_decomposition()?;
    let mut run = Run { b, rng: ChaCha8Rng::seed_from_u64(seed), seed, budget: Budget::of(level), checks: Vec::new() };

    let round_trip = FormDocument::parse(&doc.render()).map(|d| (d == *doc, "render then parse".to_string()));
    run.record("document.round-trip", round_trip);

    f2_suite(&mut run);
    graph_suite(&mut run);
    orbit_suite(&mut run);
    let basic = run.b.len() >= 2 && run.b.is_alternating() && run.b.graph().is_connected();
    if basic {
        move_suite(&mut run);
        classify_suite(&mut run);
        if !run.b.spans_ambient() && run.b.form().is_alternating() {
            coset_suite(&mut run);
        }
    }
    if let Some(d) = blocks {
        block_suite(&mut run, &d);
    }
    Ok(run.checks)
}

fn f2_suite(run: &mut Run) {
    let trials = run.budget.trials;
    let mut ok = true;
    for _ in 0..trials {
        let (u, w, v) = (run.random_ambient(), run.random_ambient(), run.random_ambient());
        let f = run.b.form();
        ok &= f.pair_bits(u ^ w, v) == f.pair_bits(u, v) ^ f.pair_bits(w, v);
        ok &= f.pair_bits(v, u ^ w) == f.pair_bits(v, u) ^ f.pair_bits(v, w);
    }
    run.record("f2.bilinearity", Ok((ok, format!("{trials} random triples"))));

    if !run.b.is_alternating() {
        return;
    }
    let span = run.b.span();
    let outcome = radical(run.b.form(), &span).and_then(|r| {
        let again = radical(run.b.form(), &r)?;
        Ok((again == r, format!("dim V0 = {}", r.dim())))
    });
    run.record("f2.radical-idempotent", outcome);

    let outcome = symplectic_basis(run.b.form(), &span).map(|s| {
        let complete = s.rank() + s.radical.len() == span.dim();
        (complete && s.verify(run.b.form()), format!("rank {}, radical {}", s.rank(), s.radical.len()))
    });
    run.record("f2.symplectic-table", outcome);

    let outcome = quadratic_form(&run.b).and_then(|q| match q.arf() {
        Ok(arf) => {
            let shuffles = 100;
            let mut basis = run.b.vectors().to_vec();
            let mut same = true;
            for _ in 0..shuffles {
                basis.shuffle(&mut run.rng);
                for _ in 0..basis.len() {
                    let (i, j) = (run.rng.gen_range(0..basis.len()), run.rng.gen_range(0..basis.len()));
                    if i != j {
                        let add = basis[j];
                        basis[i] += add;
                    }
                }
                same &= q.arf_with_basis(&basis)? == arf;
            }
            Ok((same, format!("Arf = {} over {shuffles} random bases", arf as u8)))
        }
        Err(Error::ArfUndefined) => {
            let rad = radical(run.b.form(), &span)?;
            let nonzero = rad.members().map(|h| q.eval(&h)).collect::<Result<Vec<bool>>>()?.into_iter().any(|v| v);
            Ok((nonzero, "undefined: Q is nonzero on the radical".into()))
        }
        Err(e) => Err(e),
    });
    run.record("f2.arf-basis-independence", outcome);
}

/// Forbidden patterns found by testing every vertex subset directly.
fn naive_forbidden(g: &Graph) -> BTreeSet<(ForbiddenKind, Vec<usize>)> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for s in 0u64..1 << n {
        let size = s.count_ones() as usize;
        if size < 4 {
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&v| (s >> v) & 1 == 1).collect();
        let h = g.induced_on(&vertices);
        let mut degrees: Vec<usize> = (0..size).map(|v| h.degree(v)).collect();
        degrees.sort_unstable();
        if size == 4 && degrees == [1, 1, 1, 3] {
            out.insert((ForbiddenKind::D22, vertices.clone()));
        }
        if size == 4 && h.edge_count() == 5 {
            out.insert((ForbiddenKind::Diamond, vertices.clone()));
        }
        if h.is_connected() && degrees.iter().all(|&d| d == 2) {
            out.insert((ForbiddenKind::Cycle, vertices));
        }
    }
    out
}

fn found_forbidden(g: &Graph) -> BTreeSet<(ForbiddenKind, Vec<usize>)> {
    g.find_forbidden()
        .into_iter()
        .map(|(k, mut vs)| {
            vs.sort_unstable();
            (k, vs)
        })
        .collect()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::new(n);
    for q in 1..n {
        for p in 0..q {
            if rng.gen_bool(0.5) {
                g.add_edge(p, q);
            }
        }
    }
    g
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new(g.vertex_count());
    for (p, q) in g.edges() {
        h.add_edge(perm[p], perm[q]);
    }
    h
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn graph_suite(run: &mut Run) {
    let trials = run.budget.trials;
    let mut ok = true;
    for _ in 0..trials {
        let (c1, c2) = (run.rng.gen::<u64>() & mask(run.b.len()), run.rng.gen::<u64>() & mask(run.b.len()));
        let x = run.b.combine_bits(c1) ^ run.b.combine_bits(c2);
        ok &= run.b.expand_bits(x) == Some(c1 ^ c2);
        ok &= run.b.support_subgraph(&run.vector(x)).map(|g| g.vertex_count()).ok() == Some((c1 ^ c2).count_ones() as usize);
    }
    run.record("graph.support-linearity", Ok((ok, format!("{trials} random pairs"))));

    let samples = trials / 4;
    let mut ok = true;
    for i in 0..samples {
        let g = random_graph(&mut run.rng, 4 + i % 4);
        ok &= naive_forbidden(&g) == found_forbidden(&g);
    }
    let mut detail = format!("{samples} random graphs on 4 to 7 vertices");
    if run.b.len() <= 14 {
        ok &= naive_forbidden(run.b.graph()) == found_forbidden(run.b.graph());
        detail.push_str(" and the document graph");
    }
    run.record("graph.forbidden-vs-naive", Ok((ok, detail)));

    let perms = permutations(6);
    let mut ok = true;
    for i in 0..samples {
        let g = random_graph(&mut run.rng, 6);
        let h = if i % 2 == 0 { permuted(&g, perms.choose(&mut run.rng).unwrap()) } else { random_graph(&mut run.rng, 6) };
        let iso = perms.iter().any(|p| permuted(&g, p) == h);
        ok &= iso == (g.canonical() == h.canonical());
    }
    run.record("graph.canonical-vs-permutations", Ok((ok, format!("{samples} pairs on 6 vertices"))));
}

fn whole_domain(b: &GeneratingSet) -> Option<Domain> {
    (b.dim() <= WHOLE_SPACE_DIM).then_some(Domain::Whole)
}

fn partition_closed(b: &GeneratingSet, part: &OrbitPartition) -> bool {
    let lists = part.member_lists();
    let covered: usize = lists.iter().map(Vec::len).sum();
    covered == part.domain_size()
        && lists.iter().zip(part.classes()).all(|(members, class)| {
            members[0] == class.representative
                && members.len() == class.size
                && members.iter().all(|x| {
                    let c = part.class_of(x);
                    (0..b.len()).all(|g| part.class_of(&F2Vector::raw(b.dim(), b.transvect_bits(g, x.bits()))) == c)
                })
        })
}

fn orbit_suite(run: &mut Run) {
    let trials = run.budget.trials;
    let mut ok = true;
    for _ in 0..trials {
        let x = run.random_ambient();
        let g = run.rng.gen_range(0..run.b.len().max(1));
        if g < run.b.len() {
            ok &= run.b.transvect_bits(g, run.b.transvect_bits(g, x)) == x;
        }
        let a = run.random_ambient();
        let (av, xv) = (run.vector(a), run.vector(x));
        if a != 0 && !run.b.form().pair_bits(a, a) {
            ok &= transvect(run.b.form(), &av, &xv).and_then(|y| transvect(run.b.form(), &av, &y)) == Ok(xv);
        }
    }
    run.record("orbits.involution", Ok((ok, format!("{trials} random vectors and transvectors"))));

    if run.b.form().is_symmetric() && run.b.is_alternating() {
        let mut ok = true;
        for _ in 0..trials {
            let (x, y) = (run.random_ambient(), run.random_ambient());
            let g = run.rng.gen_range(0..run.b.len());
            let f = run.b.form();
            ok &= f.pair_bits(run.b.transvect_bits(g, x), run.b.transvect_bits(g, y)) == f.pair_bits(x, y);
        }
        run.record("orbits.form-preservation", Ok((ok, format!("{trials} random pairs"))));
    }

    if let Some(domain) = whole_domain(&run.b) {
        let outcome = orbit_partition(&run.b, &domain).and_then(|part| {
            let fixed: Vec<F2Vector> = fixed_points(&run.b, &domain)?;
            let singletons: Vec<F2Vector> =
                part.classes().iter().filter(|c| c.size == 1).map(|c| c.representative).collect();
            let closed = partition_closed(&run.b, &part);
            Ok((closed && fixed == singletons, format!("{} classes over 2^{}", part.len(), run.b.dim())))
        });
        run.record("orbits.partition-closed", outcome);
        #[cfg(feature = "parallel")]
        {
            use crate::orbits::{orbit_partition_parallel, orbit_partition_sequential, DEFAULT_BUDGET_LOG2};
            let outcome = orbit_partition_sequential(&run.b, &domain, DEFAULT_BUDGET_LOG2).and_then(|s| {
                let p = orbit_partition_parallel(&run.b, &domain, DEFAULT_BUDGET_LOG2)?;
                Ok((s == p, format!("{} classes", s.len())))
            });
            run.record("orbits.sequential-equals-parallel", outcome);
        }
    }

    if run.b.is_empty() || !run.b.is_alternating() || !run.b.graph().is_connected() {
        return;
    }
    let Ok(classifier) = Classifier::new(&run.b) else {
        return;
    };
    let (v0, v000) = (classifier.v0().clone(), classifier.v000().clone());
    run.record(
        "orbits.v000-codim",
        v0.quotient_dim(&v000).map(|q| (q <= 1, format!("dim V0 / V000 = {q}"))),
    );
    if run.b.len() > run.budget.span_dim {
        return;
    }
    let span = Domain::span_of(&run.b);
    let v000_members: Vec<u64> = v000.members().map(|u| u.bits()).collect();
    let outcome = orbit_partition(&run.b, &span).map(|part| {
        let mut ok = true;
        for _ in 0..trials {
            let x = run.random_span();
            if v0.contains_bits(x) {
                continue;
            }
            let u = *v000_members.choose(&mut run.rng).unwrap();
            ok &= part.class_of(&run.vector(x)) == part.class_of(&run.vector(x ^ u));
        }
        (ok, format!("|V000| = {}", v000_members.len()))
    });
    run.record("orbits.v000-translation", outcome);

    if run.b.len() <= run.budget.oracle_dim {
        let outcome = DeltaOracle::new(&run.b).and_then(|oracle| {
            let mut ok = true;
            let mut tested = 0;
            for _ in 0..trials / 4 {
                let x = run.random_span();
                if v0.contains_bits(x) {
                    continue;
                }
                let mut y = x;
                for _ in 0..run.rng.gen_range(1..=8) {
                    y = run.b.transvect_bits(run.rng.gen_range(0..run.b.len()), y);
                }
                ok &= oracle.d(&run.vector(x))?.0 == oracle.d(&run.vector(y))?.0;
                tested += 1;
            }
            Ok((ok, format!("{tested} random images")))
        });
        run.record("orbits.d-constant", outcome);
    }
}

/// Applies `steps` random basic moves.
fn random_moves(rng: &mut ChaCha8Rng, b: &GeneratingSet, steps: usize) -> Result<GeneratingSet> {
    let mut cur = b.clone();
    for _ in 0..steps {
        let edges = cur.graph().edges();
        let &(p, q) = edges.choose(rng).ok_or(Error::NotConnected)?;
        let (c, a) = if rng.gen_bool(0.5) { (p, q) } else { (q, p) };
        cur = basic_move(&cur, c, a)?;
    }
    Ok(cur)
}

/// Checks that move-equivalence classes and recognized labels determine each
/// other on every connected graph with 2..=`max_n` vertices.
pub fn recognition_sweep(max_n: usize) -> Result<(bool, String)> {
    let mut graphs = 0;
    let mut failures = Vec::new();
    for n in 2..=max_n {
        let reps = connected_graphs(n);
        graphs += reps.len();
        let mut class_of: HashMap<_, usize> = HashMap::new();
        let mut labels: BTreeMap<usize, ClassKind> = BTreeMap::new();
        let mut seen_labels: BTreeMap<ClassKind, usize> = BTreeMap::new();
        for g in &reps {
            let key = g.canonical();
            let id = match class_of.get(&key) {
                Some(&id) => id,
                None => {
                    let id = labels.len();
                    for member in equivalence_class(g, DEFAULT_CLASS_BUDGET)? {
                        class_of.insert(member, id);
                    }
                    labels.insert(id, recognize(&GeneratingSet::from_graph(g)?)?.kind);
                    id
                }
            };
            let kind = recognize(&GeneratingSet::from_graph(g)?)?.kind;
            if labels[&id] != kind {
                failures.push(format!("n={n}: {kind} inside class of {}", labels[&id]));
            }
            if *seen_labels.entry(kind).or_insert(id) != id {
                failures.push(format!("n={n}: {kind} labels two classes"));
            }
        }
    }
    let detail = match failures.first() {
        None => format!("{graphs} connected graphs on 2 to {max_n} vertices"),
        Some(f) => format!("{} failures, first: {f}", failures.len()),
    };
    Ok((failures.is_empty(), detail))
}

fn move_suite(run: &mut Run) {
    let rounds = (run.budget.trials / 32).max(2);
    let steps = run.budget.move_steps;
    let mut moved = Vec::new();
    for _ in 0..rounds {
        match random_moves(&mut run.rng, &run.b, steps) {
            Ok(m) => moved.push(m),
            Err(e) => {
                run.record("moves.random-sequences", Err(e));
                return;
            }
        }
    }

    if run.b.len() <= run.budget.span_dim {
        let outcome = orbit_partition(&run.b, &Domain::span_of(&run.b)).and_then(|base| {
            for m in &moved {
                if orbit_partition(m, &Domain::span_of(m))? != base {
                    return Ok((false, "partition changed under a move sequence".into()));
                }
            }
            Ok((true, format!("{rounds} sequences of {steps} moves")))
        });
        run.record("moves.partition-invariance", outcome);
    }

    let trials = run.budget.trials;
    let outcome = quadratic_form(&run.b).and_then(|q| {
        let mut ok = true;
        for m in &moved {
            let qm = quadratic_form(m)?;
            for _ in 0..trials / rounds {
                let bits = run.random_span();
                let x = run.vector(bits);
                ok &= q.eval(&x)? == qm.eval(&x)?;
            }
        }
        Ok((ok, format!("{rounds} sequences")))
    });
    run.record("moves.q-invariance", outcome);

    let outcome = recognize(&run.b).and_then(|base| {
        for m in &moved {
            if recognize(m)?.kind != base.kind {
                return Ok((false, "label changed under a move sequence".into()));
            }
        }
        Ok((true, format!("label {}", base.kind)))
    });
    run.record("moves.recognize-invariance", outcome);

    if run.b.len() <= 12 {
        let base = contains_e6(run.b.graph()).is_some();
        let ok = moved.iter().all(|m| contains_e6(m.graph()).is_some() == base);
        run.record("moves.e6-stability", Ok((ok, format!("contains E6: {base}"))));
    }

    let n = run.budget.sweep_vertices;
    run.record("moves.recognition-sweep", recognition_sweep(n));
}

/// Classes of `part` outside V₀, as sorted member lists.
fn moving_classes(part: &OrbitPartition, v0: &Subspace) -> BTreeSet<Vec<u64>> {
    part.member_lists()
        .into_iter()
        .filter(|m| !v0.contains(&m[0]))
        .map(|m| m.iter().map(F2Vector::bits).collect())
        .collect()
}

fn group_by_key<K: Ord>(items: impl Iterator<Item = (K, u64)>) -> BTreeSet<Vec<u64>> {
    let mut groups: BTreeMap<K, Vec<u64>> = BTreeMap::new();
    for (k, x) in items {
        groups.entry(k).or_default().push(x);
    }
    groups
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect()
}

fn is_literal_broom(g: &Graph, m: usize, k: usize) -> bool {
    let mut expected = Graph::new(m + k);
    for i in 1..m {
        expected.add_edge(i - 1, i);
    }
    for j in 0..k {
        expected.add_edge(m - 1, m + j);
    }
    *g == expected
}

fn classify_suite(run: &mut Run) {
    let c = match Classifier::new(&run.b) {
        Ok(c) => c,
        Err(e) => {
            run.record("classify.classifier", Err(e));
            return;
        }
    };
    let trials = run.budget.trials;
    let seed = run.seed;
    run.record(
        "classify.gamma-invariance",
        Ok((gamma_invariance_check(&run.b, c.quadratic(), trials, seed), format!("{trials} random pairs"))),
    );
    if run.b.len() > run.budget.span_dim {
        return;
    }
    let part = match orbit_partition(&run.b, &Domain::span_of(&run.b)) {
        Ok(p) => p,
        Err(e) => {
            run.record("classify.partition", Err(e));
            return;
        }
    };
    let v0 = c.v0().clone();
    let brute = moving_classes(&part, &v0);
    let moving: Vec<F2Vector> = run.b.span().members().filter(|x| !v0.contains(x)).collect();

    let ClassKind::DType { m, k } = c.label().kind else {
        let outcome = moving
            .iter()
            .map(|x| c.quadratic().eval(x).map(|q| (q, x.bits())))
            .collect::<Result<Vec<_>>>()
            .map(|pairs| {
                let levels = group_by_key(pairs.into_iter());
                (brute.len() == 2 && levels == brute, format!("{} moving classes", brute.len()))
            });
        run.record("classify.two-orbits", outcome);
        return;
    };

    let outcome = moving
        .iter()
        .map(|x| c.d_formula(x).map(|d| (d, x.bits())))
        .collect::<Result<Vec<_>>>()
        .map(|pairs| {
            let levels = group_by_key(pairs.into_iter());
            (levels == brute, format!("{} level sets, {} orbits", levels.len(), brute.len()))
        });
    run.record("classify.level-sets", outcome);

    if run.b.len() <= run.budget.oracle_dim {
        let outcome = DeltaOracle::new(&run.b).and_then(|oracle| {
            for x in &moving {
                let (want, got) = (oracle.d(x)?.0, c.d_formula(x)?);
                if want != got {
                    return Ok((false, format!("x = {x}: formula {got}, oracle {want}")));
                }
            }
            Ok((true, format!("{} vectors", moving.len())))
        });
        run.record("classify.formula-vs-oracle", outcome);
    }

    let mut ok = true;
    let outcome = (|| {
        for _ in 0..trials.min(moving.len()) {
            let x = *moving.choose(&mut run.rng).unwrap();
            let reps = c.minimal_representatives(&x)?;
            let ds: BTreeSet<usize> = reps.iter().map(|r| c.d_of_representative(r)).collect();
            ok &= !reps.is_empty() && ds.len() == 1;
        }
        Ok((ok, format!("{} sampled vectors", trials.min(moving.len()))))
    })();
    run.record("classify.representative-independence", outcome);

    let fixed = 1usize << v0.dim();
    let (want_fixed, want_moving) = if m % 2 == 1 { (1usize << (k - 1), m.div_ceil(2)) } else { (1usize << k, m / 2) };
    run.record(
        "classify.counts",
        Ok((
            fixed == want_fixed && brute.len() == want_moving,
            format!("{fixed} fixed points, {} moving orbits for D({m},{k})", brute.len()),
        )),
    );

    if is_literal_broom(run.b.graph(), m, k) {
        let outcome = moving
            .iter()
            .map(|x| broom_invariant(&run.b, m, k, x).map(|d| (d, x.bits())))
            .collect::<Result<Vec<_>>>()
            .map(|pairs| (group_by_key(pairs.into_iter()) == brute, "fold invariant level sets".to_string()));
        run.record("classify.broom-agreement", outcome);
    }

    if run.b.len() >= 3 {
        let outcome = c.v000_from_subgraphs().map(|s| (s == *c.v000(), format!("dim V000 = {}", s.dim())));
        run.record("classify.v000-subgraphs", outcome);
    }

    if k >= 2 {
        let outcome = (|| {
            let mut cases = 0;
            for u in c.v000().members().filter(|u| !u.is_zero()) {
                for i in crate::f2::BitIter(run.b.expand(&u)?) {
                    c.deletion_check(&u, i)?;
                    cases += 1;
                }
            }
            Ok((true, format!("{cases} deletions")))
        })();
        run.record("classify.deletion", outcome);
    }
}

/// Coset representatives of V / U other than U itself, least first.
fn coset_offsets(u: &Subspace, limit: usize) -> Vec<F2Vector> {
    let n = u.ambient_dim();
    let mut grown = u.clone();
    let mut extra = Vec::new();
    for i in 0..n {
        let e = F2Vector::unit(n, i);
        if !grown.contains(&e) {
            grown = grown.sum(&Subspace::span(n, &[e]).expect("unit vector")).expect("same ambient");
            extra.push(e);
        }
    }
    let count = (1u64 << extra.len().min(20)).min(limit as u64 + 1);
    (1..count)
        .map(|c| {
            let v = crate::f2::BitIter(c).fold(F2Vector::zero(n), |acc, i| acc + extra[i]);
            u.coset_leader(&v)
        })
        .collect()
}

fn coset_suite(run: &mut Run) {
    let u = run.b.span();
    if u.dim() > WHOLE_SPACE_DIM {
        return;
    }
    let offsets = coset_offsets(&u, run.budget.cosets);
    let complete = offsets.len() + 1 == 1 << (run.b.dim() - u.dim());
    let mut total = 0;
    let outcome = (|| {
        let v000 = crate::orbits::v000(&run.b)?;
        for v in &offsets {
            let report = classify_coset(&CosetProblem::new(run.b.clone(), *v)?)?;
            let brute = brute_coset_partition(&run.b, v)?;
            if !report.agrees_with(&brute) {
                return Ok((false, format!("v = {v}: {} branch disagrees with closure", report.branch.name())));
            }
            let pairs = v000.basis().iter().any(|w| run.b.form().pair_bits(v.bits(), w.bits()));
            if pairs && !report.fixed_points.is_empty() {
                return Ok((false, format!("v = {v}: fixed point although Omega(v, U000) != 0")));
            }
            total += brute.len();
        }
        Ok((true, format!("{} cosets", offsets.len())))
    })();
    run.record("cosets.closed-form", outcome);

    if complete && run.b.dim() <= WHOLE_SPACE_DIM {
        let outcome = (|| {
            let whole = orbit_partition(&run.b, &Domain::Whole)?.len();
            let inner = orbit_partition(&run.b, &Domain::span_of(&run.b))?.len();
            Ok((whole == inner + total, format!("{whole} classes = {inner} in U + {total} in other cosets")))
        })();
        run.record("cosets.total", outcome);
    }
}

fn block_suite(run: &mut Run, d: &BlockDecomposition) {
    let Some(domain) = whole_domain(&run.b) else {
        return;
    };
    let part = match orbit_partition(&run.b, &domain) {
        Ok(p) => p,
        Err(e) => {
            run.record("blocks.partition", Err(e));
            return;
        }
    };
    let lists = part.member_lists();
    let outcome = (|| {
        let mut checked = 0;
        for members in lists.iter().filter(|m| m.len() > 1 || !run.b.fixes(&m[0])) {
            for x in members {
                if predicted_orbit(d, x)?.members != *members {
                    return Ok((false, format!("x = {x}: prediction differs from closure")));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} moving vectors")))
    })();
    run.record("blocks.prediction", outcome);

    let outcome = (|| {
        let (mut held, mut total) = (0, 0);
        for members in &lists {
            let x = members[0];
            if run.b.fixes(&x) {
                continue;
            }
            for target in 0..run.b.len() {
                let r = path_lemma_check(&run.b, &x, target)?;
                total += 1;
                if r.hypotheses_hold {
                    held += 1;
                    if r.in_orbit != Some(true) {
                        return Ok((false, format!("x = {x}, target {}: conclusion fails", run.b.labels()[target])));
                    }
                }
            }
        }
        Ok((true, format!("hypotheses held in {held} of {total} cases")))
    })();
    run.record("blocks.path-lemma", outcome);

    let fixed: Vec<F2Vector> = lists.iter().filter(|m| m.len() == 1).map(|m| m[0]).collect();
    let direct: Vec<F2Vector> = lists
        .iter()
        .flatten()
        .copied()
        .filter(|x| (0..run.b.len()).all(|i| !run.b.pairs_with(x.bits(), i)))
        .collect();
    let mut direct = direct;
    direct.sort();
    run.record("blocks.fixed-set", Ok((fixed == direct, format!("{} fixed vectors", fixed.len()))));
}
