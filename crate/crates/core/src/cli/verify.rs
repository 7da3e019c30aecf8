//! Randomized invariant sweep behind `bethe-spectra verify`.
//!
//! Every check is a pure function of its input, so a failing degree
//! sequence can be shrunk greedily to a smaller one that still fails.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bethe::{
    char_poly_factored, critical_factor, g_polynomials, level_multiplicities, root_multiplicity,
    smallest_eigenvalue, smallest_eigenvalue_multiplicity, verify_interlacing, verify_simple_zeros,
    DegreeSequence,
};
use crate::graphs::{
    build_bethe_tree, line_graph, random_rooted_tree, recognize_bethe_tree, Graph,
};
use crate::oracle::char_poly_of_graph;
use crate::oracle::{adjacency_matrix, char_poly_exact, determinant, eigenvalues_numeric};
use crate::poly::{default_eps, BigRational, IntPoly, SturmChain};
use crate::schwenk::constructions::{
    attached_to_complete, attached_to_complete_minus_one, coalescence,
};
use crate::schwenk::{
    attach_complete, attach_complete_minus_one, attach_to_all, coalesce, complete_char_poly,
    RootedCharPair,
};

/// Largest rooted tree used for the composition checks.
const MAX_TREE: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub detail: String,
    /// Command line that reproduces the failure on its own.
    pub reproducer: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub trials: u64,
    pub max_size: usize,
    pub checks: Vec<CheckTally>,
    pub failure: Option<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Faults {
    /// Add one to `σ_1` before comparing with the oracle.
    pub corrupt_sigma: bool,
}

type CheckResult = Result<(), String>;

const SEQUENCE_CHECKS: [&str; 6] = [
    "factorization",
    "critical-factor",
    "divisibility",
    "simple-zeros",
    "interlacing",
    "multiplicity",
];
const TREE_CHECKS: [&str; 4] = [
    "coalesce",
    "attach-to-all",
    "attach-complete",
    "attach-complete-minus-one",
];

fn check_sequence(name: &str, d: &DegreeSequence, max_size: usize, faults: Faults) -> CheckResult {
    let k = d.k();
    let g = g_polynomials(d);
    let x2 = IntPoly::x_plus(2);
    match name {
        "factorization" => {
            let mut f = char_poly_factored(d);
            if faults.corrupt_sigma {
                f.factors[0].1 += 1;
            }
            let line = line_graph(&build_bethe_tree(d).graph);
            if line.vertex_count() > max_size {
                return Ok(());
            }
            let formula = f.expand().map_err(|e| e.to_string())?;
            let oracle = char_poly_of_graph(&line);
            if formula != oracle {
                return Err(format!("formula {formula} but oracle {oracle}"));
            }
            Ok(())
        }
        "critical-factor" => {
            let lhs = critical_factor(d);
            let rhs = &x2 * g.get(k - 1);
            (lhs == rhs)
                .then_some(())
                .ok_or_else(|| format!("g_k + d_k(g_(k-1) + g_(k-2)) = {lhs}, expected {rhs}"))
        }
        "divisibility" => {
            g.get(k).exact_div(&x2).map_err(|e| format!("g_k: {e}"))?;
            for i in 1..k {
                (g.get(i) + g.get(i - 1))
                    .exact_div(&x2)
                    .map_err(|e| format!("g_{i} + g_{}: {e}", i - 1))?;
            }
            Ok(())
        }
        "simple-zeros" => verify_simple_zeros(d)
            .then_some(())
            .ok_or_else(|| "some g_i has a repeated zero".to_string()),
        "interlacing" => verify_interlacing(d, &default_eps())
            .map(|_| ())
            .map_err(|e| e.to_string()),
        "multiplicity" => {
            if d.dk() < 2 {
                return Ok(());
            }
            let mult = smallest_eigenvalue_multiplicity(d).map_err(|e| e.to_string())?;
            let edges = level_multiplicities(d).edge_count();
            if edges as usize > max_size {
                return Ok(());
            }
            let chi = char_poly_factored(d).expand().map_err(|e| e.to_string())?;
            let iv = smallest_eigenvalue(d, &default_eps()).map_err(|e| e.to_string())?;
            let chi_min = SturmChain::new(&chi)
                .and_then(|c| c.isolate_smallest(&default_eps()))
                .map_err(|e| e.to_string())?;
            if !chi_min.overlaps(&iv) {
                return Err(format!("χ has a zero below λ_min: {chi_min:?} vs {iv:?}"));
            }
            let in_chi = root_multiplicity(&chi, &iv).map_err(|e| e.to_string())?;
            (in_chi == mult)
                .then_some(())
                .ok_or_else(|| format!("multiplicity in χ is {in_chi}, expected {mult}"))
        }
        _ => unreachable!("unknown sequence check {name}"),
    }
}

fn check_tree(
    name: &str,
    h: &crate::graphs::RootedGraph,
    g: &crate::graphs::RootedGraph,
) -> CheckResult {
    let hp = RootedCharPair::of_graph(h);
    let mismatch = |what: String, got: &IntPoly, want: &IntPoly| {
        Err(format!("{what}: composed {got} but oracle {want}"))
    };
    match name {
        "coalesce" => {
            let gp = RootedCharPair::of_graph(g);
            let want = char_poly_of_graph(&coalescence(g, h));
            let got = coalesce(&gp, &hp);
            if got != want {
                return mismatch("G·H".into(), &got, &want);
            }
            let flipped = coalesce(&hp, &gp);
            if flipped != got {
                return Err(format!("coalesce not symmetric: {got} vs {flipped}"));
            }
            Ok(())
        }
        "attach-to-all" => {
            let n0 = g.graph.vertex_count();
            let want =
                char_poly_of_graph(&crate::schwenk::constructions::attached_to_all(&g.graph, h));
            let got =
                attach_to_all(&char_poly_of_graph(&g.graph), n0, &hp).map_err(|e| e.to_string())?;
            if got != want {
                return mismatch(format!("H on all {n0} vertices of G_0"), &got, &want);
            }
            Ok(())
        }
        "attach-complete" => {
            for s in 2..=4 {
                let want = char_poly_of_graph(&attached_to_complete(h, s));
                let got = attach_complete(&hp, s)
                    .map_err(|e| e.to_string())?
                    .product();
                if got != want {
                    return mismatch(format!("K_{s}"), &got, &want);
                }
                let via_all =
                    attach_to_all(&complete_char_poly(s), s, &hp).map_err(|e| e.to_string())?;
                if via_all != got {
                    return mismatch(format!("K_{s} via attach-to-all"), &via_all, &got);
                }
            }
            Ok(())
        }
        "attach-complete-minus-one" => {
            for s in 2..=4 {
                let want = char_poly_of_graph(&attached_to_complete_minus_one(h, s));
                let got = attach_complete_minus_one(&hp, s)
                    .map_err(|e| e.to_string())?
                    .product();
                if got != want {
                    return mismatch(format!("K_{s} minus one"), &got, &want);
                }
            }
            Ok(())
        }
        _ => unreachable!("unknown tree check {name}"),
    }
}

/// A random valid degree sequence whose line graph has at most `max_size`
/// vertices. Sizes are drawn so that both small and large trees appear.
pub fn random_degree_sequence(rng: &mut ChaCha8Rng, max_size: usize) -> DegreeSequence {
    loop {
        let k = rng.gen_range(2..=5);
        let mut d = vec![1];
        d.extend((1..k - 1).map(|_| rng.gen_range(2..=4)));
        d.push(rng.gen_range(1..=5));
        let Ok(seq) = DegreeSequence::new(d) else {
            continue;
        };
        if level_multiplicities(&seq).edge_count() as usize <= max_size.max(1) {
            return seq;
        }
    }
}

/// Smaller sequences to try when shrinking a failure: drop the level just
/// above the leaves, or lower one entry by one.
fn shrink_candidates(d: &DegreeSequence) -> Vec<DegreeSequence> {
    let s = d.as_slice();
    let k = s.len();
    let mut out = Vec::new();
    if k > 2 {
        let mut t = s.to_vec();
        t.remove(k - 2);
        out.extend(DegreeSequence::new(t).ok());
    }
    for i in 1..k {
        let mut t = s.to_vec();
        t[i] -= 1;
        out.extend(DegreeSequence::new(t).ok());
    }
    out
}

fn shrink(
    check: &str,
    mut d: DegreeSequence,
    max_size: usize,
    faults: Faults,
) -> (DegreeSequence, String) {
    let mut detail = check_sequence(check, &d, max_size, faults).unwrap_err();
    'outer: loop {
        for c in shrink_candidates(&d) {
            if let Err(e) = check_sequence(check, &c, max_size, faults) {
                d = c;
                detail = e;
                continue 'outer;
            }
        }
        return (d, detail);
    }
}

/// Run `trials` rounds. Each round draws one degree sequence and one pair
/// of rooted trees, and runs every check on them. Stops at the first
/// failure.
pub fn run_verify(
    rng: &mut ChaCha8Rng,
    trials: u64,
    max_size: usize,
    faults: Faults,
) -> VerifyReport {
    let mut checks: Vec<CheckTally> = SEQUENCE_CHECKS
        .iter()
        .chain(TREE_CHECKS.iter())
        .map(|&name| CheckTally { name, passed: 0 })
        .collect();
    let mut failure = None;
    'trials: for _ in 0..trials {
        let d = random_degree_sequence(rng, max_size);
        let h = random_rooted_tree(rng.gen_range(1..=MAX_TREE), rng);
        let g = random_rooted_tree(rng.gen_range(1..=MAX_TREE / 2), rng);
        for (i, &name) in SEQUENCE_CHECKS.iter().enumerate() {
            if check_sequence(name, &d, max_size, faults).is_err() {
                let (small, detail) = shrink(name, d.clone(), max_size, faults);
                failure = Some(Failure {
                    check: name,
                    detail,
                    reproducer: format!(
                        "bethe-spectra charpoly --degrees {}",
                        small
                            .as_slice()
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    ),
                });
                break 'trials;
            }
            checks[i].passed += 1;
        }
        for (i, &name) in TREE_CHECKS.iter().enumerate() {
            if let Err(detail) = check_tree(name, &h, &g) {
                failure = Some(Failure {
                    check: name,
                    detail,
                    reproducer: format!(
                        "H = {} rooted at {}; G = {} rooted at {}",
                        edge_list_inline(&h.graph),
                        h.root,
                        edge_list_inline(&g.graph),
                        g.root
                    ),
                });
                break 'trials;
            }
            checks[SEQUENCE_CHECKS.len() + i].passed += 1;
        }
    }
    VerifyReport {
        trials,
        max_size,
        checks,
        failure,
    }
}

fn edge_list_inline(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|[u, v]| format!("{u}-{v}")).collect();
    format!("n={} [{}]", g.vertex_count(), edges.join(" "))
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphCheck {
    pub vertices: usize,
    pub edges: usize,
    pub char_poly: IntPoly,
    /// `Some((d, root))` when the input is a generalized Bethe tree.
    pub bethe: Option<(DegreeSequence, usize)>,
    pub checks: Vec<CheckTally>,
    pub failure: Option<Failure>,
}

/// Oracle self-consistency on one explicit graph: exact char poly against
/// integer determinants, Sturm counts against the numeric spectrum, the
/// trace, and (for Bethe trees) the closed form for the line graph.
pub fn verify_graph(g: &Graph, tol: f64) -> GraphCheck {
    let a = adjacency_matrix(g);
    let chi = char_poly_exact(&a);
    let bethe = recognize_bethe_tree(g);
    let mut checks = Vec::new();
    let mut failure = None;
    let mut run = |name: &'static str, r: CheckResult| {
        if failure.is_some() {
            return;
        }
        match r {
            Ok(()) => checks.push(CheckTally { name, passed: 1 }),
            Err(detail) => {
                failure = Some(Failure {
                    check: name,
                    detail,
                    reproducer: "rerun verify on the same edge list".into(),
                })
            }
        }
    };
    run("determinant", {
        (-3i64..=3)
            .find(|&x| chi.eval_int(&x.into()) != determinant(&a.shifted(x)))
            .map_or(Ok(()), |x| Err(format!("χ({x}) != det({x}I - A)")))
    });
    let numeric = eigenvalues_numeric(&a, tol);
    run(
        "spectrum",
        match &numeric {
            Err(e) => Err(e.to_string()),
            Ok(vals) => spectrum_agrees(&chi, vals, tol),
        },
    );
    if let Ok(vals) = &numeric {
        let trace: f64 = vals.iter().sum();
        run(
            "trace",
            if trace.abs() <= vals.len().max(1) as f64 * tol {
                Ok(())
            } else {
                Err(format!("eigenvalues sum to {trace}"))
            },
        );
    }
    if let Some((d, _)) = &bethe {
        let line = line_graph(g);
        run("factorization", {
            let formula = char_poly_factored(d).expand().map_err(|e| e.to_string());
            formula.and_then(|f| {
                let oracle = char_poly_of_graph(&line);
                (f == oracle)
                    .then_some(())
                    .ok_or_else(|| format!("formula {f} but oracle {oracle}"))
            })
        });
    }
    GraphCheck {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        char_poly: chi,
        bethe,
        checks,
        failure,
    }
}

/// Sturm counts of `chi` on windows around each numeric eigenvalue cluster
/// match the cluster sizes (counted without multiplicity on both sides).
fn spectrum_agrees(chi: &IntPoly, vals: &[f64], tol: f64) -> CheckResult {
    let chain = SturmChain::new(chi).map_err(|e| e.to_string())?;
    let mut clusters: Vec<f64> = Vec::new();
    for &v in vals {
        if clusters.last().is_none_or(|&c| v - c > 1e3 * tol) {
            clusters.push(v);
        }
    }
    let distinct = chain.distinct_real_roots();
    if distinct != clusters.len() {
        return Err(format!(
            "{distinct} distinct exact roots but {} numeric clusters",
            clusters.len()
        ));
    }
    for &c in &clusters {
        let lo = BigRational::from_float(c - 1e2 * tol).expect("finite");
        let hi = BigRational::from_float(c + 1e2 * tol).expect("finite");
        let n = chain.count_half_open(&lo, &hi);
        if n != 1 {
            return Err(format!("{n} exact roots near numeric eigenvalue {c}"));
        }
    }
    Ok(())
}
