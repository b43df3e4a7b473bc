//! End-to-end acceptance checks. Runs without the test harness so that each
//! criterion prints one PASS/FAIL line with its time limit; exits nonzero if
//! any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use normsurf::angles::{
    find_angle_structure, surface_area, verify_angle_structure, AngleStructure,
};
use normsurf::boundary::generate::{
    square_torus, square_torus_curve, subdivide_edge, subdivide_triangle,
};
use normsurf::boundary::{meridional_bound, BoundaryTorus};
use normsurf::discs::{arc_types, enumerate_disc_types, ArcType, Classification, FaceKind};
use normsurf::fixtures;
use normsurf::matching::{
    build_system, decompose_into, fundamental_solutions_with, hilbert_basis, HilbertOptions,
    MatchingSystem,
};
use normsurf::pipeline::{run_pipeline, BoundaryBudget, PipelineConfig};
use normsurf::surfaces::{
    assemble, boundary_parallel_elements, candidate_vectors, caps_from_invariants,
    coefficient_caps, combine, euler_characteristic, CandidateParameters, CandidateVector, CapKind,
};
use normsurf::tri::{validate, IdealTriangulation};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn unsigned(e: &[i64]) -> Vec<u64> {
    e.iter().map(|&x| x as u64).collect()
}

// ---------------------------------------------------------------- 1

/// Side-pair and separation classes of arcs on a polygon with `n` sides.
/// `returning` lists the sides an arc may leave and re-enter.
fn arc_classes_oracle(n: u8, returning: &[u8]) -> BTreeSet<(u8, u8, Vec<u8>)> {
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            let rest: Vec<u8> = (0..n).filter(|&s| s != a && s != b).collect();
            for mask in 0u32..1 << rest.len() {
                let set: Vec<u8> = rest
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &s)| s)
                    .collect();
                // sides met walking counterclockwise from a
                let walk: Vec<u8> = (1..n).map(|k| (a + k) % n).collect();
                if a != b {
                    let between: Vec<u8> = walk.iter().copied().take_while(|&s| s != b).collect();
                    let mut sorted = between.clone();
                    sorted.sort_unstable();
                    if set == sorted {
                        out.insert((a.min(b), a.max(b), Vec::new()));
                    }
                } else if returning.contains(&a) && !set.is_empty() && set.len() < rest.len() {
                    let k = set.len();
                    let mut run: Vec<u8> = walk[..k].to_vec();
                    run.sort_unstable();
                    if set == run {
                        out.insert((a, a, set));
                    }
                }
            }
        }
    }
    out
}

fn arc_key(n: u8, t: &ArcType) -> (u8, u8, Vec<u8>) {
    match *t {
        ArcType::Between(i, j) => (i.min(j), i.max(j), Vec::new()),
        ArcType::Returning { side, cut } => {
            let mut run: Vec<u8> = (1..=cut).map(|k| (side + k) % n).collect();
            run.sort_unstable();
            (side, side, run)
        }
    }
}

fn criterion_1_arc_type_counts() -> Outcome {
    let tri = arc_types(FaceKind::Triangle);
    let hex = arc_types(FaceKind::Hexagon);
    let tri_oracle = arc_classes_oracle(3, &[]);
    let hex_oracle = arc_classes_oracle(6, &[1, 3, 5]);
    let tri_keys: BTreeSet<_> = tri.iter().map(|t| arc_key(3, t)).collect();
    let hex_keys: BTreeSet<_> = hex.iter().map(|t| arc_key(6, t)).collect();
    let ok = tri.len() == 3
        && hex.len() == 27
        && tri_keys.len() == tri.len()
        && hex_keys.len() == hex.len()
        && tri_keys == tri_oracle
        && hex_keys == hex_oracle;
    outcome(
        ok,
        format!(
            "triangle {} (oracle {}), hexagon {} (oracle {})",
            tri.len(),
            tri_oracle.len(),
            hex.len(),
            hex_oracle.len()
        ),
    )
}

// ---------------------------------------------------------------- 2

const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn tet_edge(i: usize, j: usize) -> usize {
    TET_EDGES
        .iter()
        .position(|&p| p == (i.min(j), i.max(j)))
        .unwrap()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Number of closed curves in the normal multicurve on the boundary of a
/// tetrahedron with edge weights `w`, or `None` if the weights fail the
/// triangle conditions on some face.
fn normal_curve_components(w: &[u32; 6]) -> Option<usize> {
    let mut base = [0usize; 6];
    let mut total = 0;
    for e in 0..6 {
        base[e] = total;
        total += w[e] as usize;
    }
    // position of the point at distance k from vertex v on edge e
    let point = |e: usize, v: usize, k: usize| {
        let (i, _) = TET_EDGES[e];
        base[e] + if v == i { k } else { w[e] as usize - 1 - k }
    };
    let mut parent: Vec<usize> = (0..total).collect();
    let mut degree = vec![0u32; total];
    for f in 0..4 {
        let verts: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        for &v in &verts {
            let o: Vec<usize> = verts.iter().copied().filter(|&x| x != v).collect();
            let (ea, eb, eo) = (tet_edge(v, o[0]), tet_edge(v, o[1]), tet_edge(o[0], o[1]));
            let twice = w[ea] as i64 + w[eb] as i64 - w[eo] as i64;
            if twice < 0 || twice % 2 != 0 || twice / 2 > w[ea].min(w[eb]) as i64 {
                return None;
            }
            for k in 0..(twice / 2) as usize {
                let (p, q) = (point(ea, v, k), point(eb, v, k));
                degree[p] += 1;
                degree[q] += 1;
                let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
                parent[rp] = rq;
            }
        }
    }
    assert!(degree.iter().all(|&d| d == 2));
    let roots: BTreeSet<usize> = (0..total).map(|p| find(&mut parent, p)).collect();
    Some(roots.len())
}

/// Connected normal curves of edge weight at most `cap`, with a coarse
/// classification: "tri", "quad" or "octagon".
fn closed_curve_oracle(cap: u32) -> BTreeMap<[u32; 6], &'static str> {
    let mut out = BTreeMap::new();
    for code in 1..(cap + 1).pow(6) {
        let mut w = [0u32; 6];
        let mut c = code;
        for x in w.iter_mut() {
            *x = c % (cap + 1);
            c /= cap + 1;
        }
        if normal_curve_components(&w) == Some(1) {
            let len: u32 = w.iter().sum();
            let kind = match (len, w.iter().max().unwrap()) {
                (3, 1) => "tri",
                (4, 1) => "quad",
                (8, 2) => "octagon",
                _ => "other",
            };
            out.insert(w, kind);
        }
    }
    out
}

fn criterion_2_disc_enumeration() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (cap, want) in [(1u32, 7usize), (2, 10)] {
        let en = enumerate_disc_types(0, cap);
        let oracle = closed_curve_oracle(cap);
        let mut got = BTreeMap::new();
        for d in &en.discs {
            ok &= d.boundary_mult.iter().all(|&m| m == 0);
            got.insert(d.interior_mult, d.classification.clone());
        }
        let count = |k: &str| oracle.values().filter(|&&v| v == k).count();
        let class = |c: Classification| got.values().filter(|&v| *v == c).count();
        ok &= en.discs.len() == want && got.len() == want && oracle.len() == want;
        ok &= got.keys().eq(oracle.keys());
        ok &= count("tri") == 4
            && count("quad") == 3
            && count("octagon") == want - 7
            && count("other") == 0;
        for (w, kind) in &oracle {
            let expect = if *kind == "octagon" {
                Classification::AlmostNormal
            } else {
                Classification::Normal
            };
            ok &= got.get(w) == Some(&expect);
        }
        ok &= class(Classification::Normal) == 7 && class(Classification::AlmostNormal) == want - 7;
        detail.push(format!(
            "cap {cap}: {} (oracle {})",
            en.discs.len(),
            oracle.len()
        ));
    }
    outcome(ok, detail.join(", "))
}

// ---------------------------------------------------------------- 3

fn census(b: u32, cap: u32) -> (IdealTriangulation, MatchingSystem) {
    let tri = fixtures::figure_eight();
    let sys = build_system(&tri, &enumerate_disc_types(b, cap).admissible());
    (tri, sys)
}

fn criterion_3_census_fixture() -> Outcome {
    let tri = fixtures::figure_eight();
    let v = validate(&tri);
    let mut ok = v.ok && v.tet_count == 2 && v.edge_class_count == 2;

    let strict = find_angle_structure(&tri, false, 0);
    ok &= strict
        .as_ref()
        .is_some_and(|a| !a.has_flat() && verify_angle_structure(&tri, a).unwrap());
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let uniform = AngleStructure::uniform(2, [third.clone(), third.clone(), third]);
    ok &= verify_angle_structure(&tri, &uniform).unwrap();

    let (tri, sys) = census(0, 2);
    let link = sys.link_vector().unwrap();
    let basis = fundamental_solutions_with(&sys, Some(20), Some(0)).unwrap();
    let in_basis = basis.elements.iter().position(|e| unsigned(e) == link);
    ok &= !basis.truncated && in_basis.is_some();
    let s = assemble(&tri, &sys, &link).unwrap().unwrap();
    ok &= s.closed && s.euler == 0;
    let links = boundary_parallel_elements(&tri, &sys, &basis.elements).unwrap();
    ok &= in_basis.is_some_and(|i| links.contains(&i));
    ok &= surface_area(&uniform, &sys, &link).unwrap() == BigRational::from_integer(0.into());
    ok &= surface_area(strict.as_ref().unwrap(), &sys, &link).unwrap()
        == BigRational::from_integer(0.into());
    outcome(
        ok,
        format!(
            "E = {}, t = {}, link fundamental at index {:?}, chi {}, boundary-parallel {:?}",
            v.edge_class_count, v.tet_count, in_basis, s.euler, links
        ),
    )
}

// ---------------------------------------------------------------- 4

fn criterion_4_area_identity() -> Outcome {
    let mut ok = true;
    let mut checked = 0usize;
    let mut with_angles = Vec::new();
    let all = [
        ("figure_eight", fixtures::figure_eight()),
        ("flat_only", fixtures::flat_only()),
        ("one_tet_klein_cusp", fixtures::one_tet_klein_cusp()),
        ("valence_one_edge", fixtures::valence_one_edge()),
    ];
    for (name, tri) in &all {
        let Some(angles) = find_angle_structure(tri, true, tri.tet_count()) else {
            continue;
        };
        with_angles.push(*name);
        for (n, b) in [(2u64, 0u32), (2, 2)] {
            let sys = build_system(tri, &enumerate_disc_types(b, 2).admissible());
            let basis = fundamental_solutions_with(&sys, Some(20), Some(b as i64)).unwrap();
            assert!(!basis.truncated);
            let mut vectors: Vec<Vec<u64>> = basis.elements.iter().map(|e| unsigned(e)).collect();
            let params = CandidateParameters { n, b: b as u64 };
            let links = boundary_parallel_elements(tri, &sys, &basis.elements).unwrap();
            let caps = coefficient_caps(tri, &sys, &basis.elements, false, params, &links).unwrap();
            for c in candidate_vectors(tri, &sys, &basis.elements, &caps, params).unwrap() {
                vectors.push(c.vector);
            }
            for v in vectors {
                let Some(s) = assemble(tri, &sys, &v).unwrap() else {
                    continue;
                };
                let area = surface_area(&angles, &sys, &v).unwrap();
                ok &= area == BigRational::from_integer((-2 * s.euler).into());
                checked += 1;
            }
        }
    }
    ok &= with_angles.contains(&"figure_eight") && checked > 0;
    outcome(
        ok,
        format!("{checked} assembled surfaces on {with_angles:?}"),
    )
}

// ---------------------------------------------------------------- 5

/// All nonzero solutions of `rows x = 0` with coordinates in `0..=max`.
fn brute_solutions(rows: &[Vec<i64>], n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] > max {
                x[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        if k == n {
            return out;
        }
        if rows
            .iter()
            .all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            out.push(x.clone());
        }
    }
}

fn minimal(mut sols: Vec<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    sols.sort_by_key(|s| s.iter().sum::<i64>());
    let mut mins: Vec<Vec<i64>> = Vec::new();
    for s in sols {
        if !mins.iter().any(|m| m.iter().zip(&s).all(|(a, b)| a <= b)) {
            mins.push(s);
        }
    }
    mins.into_iter().collect()
}

fn criterion_5_hilbert_basis() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatched = 0;
    let mut undecomposed = 0;
    let mut elements = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=4);
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let hb = hilbert_basis(
            &rows,
            n,
            &HilbertOptions {
                coord_cap: Some(10),
                degree_bound: None,
            },
        )
        .unwrap();
        let got: BTreeSet<Vec<i64>> = hb.elements.iter().cloned().collect();
        let sols = brute_solutions(&rows, n, 10);
        if got != minimal(sols.clone()) {
            mismatched += 1;
        }
        elements += got.len();
        for s in sols.iter().filter(|s| s.iter().all(|&x| x <= 5)) {
            if decompose_into(s, &hb.elements).is_none() {
                undecomposed += 1;
            }
        }
    }
    outcome(mismatched == 0 && undecomposed == 0,
        format!("100 systems, {elements} basis elements, {mismatched} mismatched, {undecomposed} undecomposed"))
}

// ---------------------------------------------------------------- 6

/// Largest `|chi|` of a nonnegative combination of boundary-meeting
/// elements within degree `b`, by listing every such combination.
fn excess_oracle(items: &[(u64, i64)], b: u64) -> u64 {
    let mut best = 0u64;
    let mut a = vec![0u64; items.len()];
    loop {
        let deg: u64 = a.iter().zip(items).map(|(x, (d, _))| x * d).sum();
        if deg <= b {
            let chi: i64 = a.iter().zip(items).map(|(&x, (_, c))| x as i64 * c).sum();
            best = best.max(chi.unsigned_abs());
        }
        let mut k = 0;
        while k < a.len() {
            a[k] += 1;
            if a[k] * items[k].0 > b {
                a[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        if k == a.len() {
            return best;
        }
    }
}

/// Candidate stream by listing capped tuples in lexicographic order. Every
/// element must be closed with `chi <= 0`, which holds on the census fixture
/// for the budgets used.
fn candidate_oracle(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    basis: &[Vec<i64>],
    caps: &[u64],
    euler: &[i64],
    n: u64,
) -> Vec<CandidateVector> {
    fn go(
        i: usize,
        caps: &[u64],
        euler: &[i64],
        used: u64,
        n: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if i == caps.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=caps[i] {
            let cost = used + a * euler[i].unsigned_abs();
            if cost > n {
                break;
            }
            cur.push(a);
            go(i + 1, caps, euler, cost, n, cur, out);
            cur.pop();
        }
    }
    let mut tuples = Vec::new();
    go(0, caps, euler, 0, n, &mut Vec::new(), &mut tuples);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in tuples {
        if t.iter().all(|&a| a == 0) {
            continue;
        }
        let v = combine(basis, &t);
        if euler_characteristic(tri, sys, &v).unwrap() < -(n as i64) {
            continue;
        }
        if assemble(tri, sys, &v).unwrap().is_some() && seen.insert(v.clone()) {
            out.push(CandidateVector {
                coefficients: t,
                vector: v,
            });
        }
    }
    out
}

fn criterion_6_coefficient_caps() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();

    let torus = caps_from_invariants(vec![0], vec![0], CandidateParameters { n: 0, b: 12 });
    ok &= torus.caps == vec![52] && torus.kinds == vec![CapKind::Torus];

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let k = rng.gen_range(1..=6);
        let degrees: Vec<u64> = (0..k)
            .map(|_| [0, 0, 2, 3, 4, 6][rng.gen_range(0..6)])
            .collect();
        let euler: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=2)).collect();
        let params = CandidateParameters {
            n: rng.gen_range(0..=4),
            b: rng.gen_range(0..=14),
        };
        let touching: Vec<(u64, i64)> = degrees
            .iter()
            .zip(&euler)
            .filter(|(&d, _)| d > 0)
            .map(|(&d, &x)| (d, x))
            .collect();
        let x = excess_oracle(&touching, params.b);
        let c = caps_from_invariants(degrees.clone(), euler.clone(), params);
        ok &= c.chi_excess == x;
        for i in 0..k {
            let want = if let Some(a) = params.b.checked_div(degrees[i]) {
                a
            } else if euler[i] < 0 {
                params.n + x
            } else if euler[i] == 0 {
                4 * params.b + 4
            } else {
                0
            };
            ok &= c.caps[i] == want;
        }
    }

    for (n, b, cap) in [(0u64, 0u32, 2u32), (2, 4, 2)] {
        let (tri, sys) = census(b, cap);
        let basis = fundamental_solutions_with(&sys, Some(20), Some(b as i64)).unwrap();
        let params = CandidateParameters { n, b: b as u64 };
        let links = boundary_parallel_elements(&tri, &sys, &basis.elements).unwrap();
        let caps =
            coefficient_caps(&tri, &sys, &basis.elements, basis.truncated, params, &links).unwrap();
        ok &= caps.degrees.iter().all(|&d| d == 0) && caps.euler.iter().all(|&x| x <= 0);
        for i in 0..caps.caps.len() {
            let want = if caps.euler[i] < 0 {
                n
            } else {
                4 * b as u64 + 4
            };
            ok &= caps.caps[i] == want;
        }
        let got = candidate_vectors(&tri, &sys, &basis.elements, &caps, params).unwrap();
        let want = candidate_oracle(&tri, &sys, &basis.elements, &caps.caps, &caps.euler, n);
        ok &= got == want;
        detail.push(format!(
            "(n, b) = ({n}, {b}): {} candidates (oracle {})",
            got.len(),
            want.len()
        ));
    }
    outcome(ok, detail.join(", "))
}

// ---------------------------------------------------------------- 7

fn criterion_7_contraction_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let slopes = [
        (1u32, 0u32),
        (0, 1),
        (1, 1),
        (2, 1),
        (1, 2),
        (3, 2),
        (2, 3),
        (3, 1),
    ];
    let mut failures = Vec::new();
    let mut deviations = 0;
    for run in 0..50 {
        let (p, q) = slopes[rng.gen_range(0..slopes.len())];
        let mut s = square_torus();
        let mut w = square_torus_curve(p, q);
        let k = rng.gen_range(0..=6);
        for _ in 0..k {
            if rng.gen_bool(0.5) {
                let t = rng.gen_range(0..s.triangle_count());
                (s, w) = subdivide_triangle(&s, t, &w).unwrap();
            } else {
                let es: Vec<usize> = (0..s.edge_count())
                    .filter(|&e| {
                        let [a, b] = s.edge_sides(e);
                        a.tri != b.tri
                    })
                    .collect();
                let e = es[rng.gen_range(0..es.len())];
                (s, w) = subdivide_edge(&s, e, &w).unwrap();
            }
        }
        let n0 = w.len() as u64;
        let torus = BoundaryTorus::from_complex(s).unwrap();
        let mb = meridional_bound(&torus, &w).unwrap();
        let terminal_ok = mb.terminal == (1, 3, 2) || mb.deviation.is_some();
        if mb.deviation.is_some() {
            deviations += 1;
        }
        let u_ok = mb.u == mb.n as u64 * 4u64.pow(mb.k as u32) && mb.u >= mb.n as u64 && mb.u >= n0;
        if !(terminal_ok && u_ok) {
            failures.push(format!(
                "run {run}: slope {p}/{q}, k {k}, n0 {n0}, n {}, u {}",
                mb.n, mb.u
            ));
        }
    }
    outcome(
        failures.is_empty(),
        format!("50 tori, {deviations} deviations, failures {failures:?}"),
    )
}

// ---------------------------------------------------------------- 8

fn criterion_8_determinism() -> Outcome {
    let runs = [
        (
            fixtures::FIGURE_EIGHT_JSON,
            2u64,
            BoundaryBudget::Fixed(4),
            Some(2u32),
        ),
        (
            fixtures::FIGURE_EIGHT_JSON,
            0,
            BoundaryBudget::Fixed(0),
            None,
        ),
        (fixtures::FLAT_ONLY_JSON, 1, BoundaryBudget::Fixed(2), None),
    ];
    let mut ok = true;
    let mut sizes = Vec::new();
    for (input, n, b, cap) in runs {
        let mut outputs = Vec::new();
        for threads in [None, Some(1), Some(4), Some(1)] {
            let config = PipelineConfig {
                chi_budget: n,
                boundary_budget: b,
                interior_cap: cap,
                threads,
                ..PipelineConfig::default()
            };
            let r = run_pipeline(input, &config).unwrap();
            outputs.push(serde_json::to_vec(&r).unwrap());
        }
        ok &= outputs.windows(2).all(|w| w[0] == w[1]);
        sizes.push(outputs[0].len());
    }
    outcome(
        ok,
        format!("3 configurations x 4 runs, report sizes {sizes:?} bytes"),
    )
}

fn main() {
    let criteria: [(fn() -> Outcome, u64); 8] = [
        (criterion_1_arc_type_counts, 1),
        (criterion_2_disc_enumeration, 10),
        (criterion_3_census_fixture, 30),
        (criterion_4_area_identity, 120),
        (criterion_5_hilbert_basis, 300),
        (criterion_6_coefficient_caps, 300),
        (criterion_7_contraction_pipeline, 60),
        (criterion_8_determinism, 60),
    ];
    let mut failed = 0;
    for (i, (run, limit)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let result = std::panic::catch_unwind(run);
        let elapsed = t0.elapsed();
        let (ok, detail) = match result {
            Ok(o) => (o.ok && elapsed < Duration::from_secs(limit), o.detail),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {detail} ({:.3}s, limit {limit}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
}
