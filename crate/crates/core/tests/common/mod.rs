//! Test oracles, written independently of the library's own algorithms, and
//! random presentation generators.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use proptest::prelude::*;
use quiverhh::linalg::{FieldSpec, Scalar, SparseVec};
use quiverhh::presentation::{parse_presentation, Bound, FiniteDimAlgebra};
use quiverhh::quiver::{Path, Quiver};

pub fn bound(text: &str, field: Option<FieldSpec>) -> Bound {
    parse_presentation(text, field).unwrap().build().unwrap()
}

pub fn corpus(name: &str) -> &'static str {
    match name {
        "jw_p2_x" => include_str!("../../corpus/jw_p2_x.bqv"),
        "jw_p2_x_plus_1" => include_str!("../../corpus/jw_p2_x_plus_1.bqv"),
        "jw_p3_x" => include_str!("../../corpus/jw_p3_x.bqv"),
        "jw_p3_x_plus_1" => include_str!("../../corpus/jw_p3_x_plus_1.bqv"),
        "jw_p5_x" => include_str!("../../corpus/jw_p5_x.bqv"),
        "jw_p5_x_plus_1" => include_str!("../../corpus/jw_p5_x_plus_1.bqv"),
        "double_loop" => include_str!("../../corpus/double_loop.bqv"),
        "a3_zero_path" => include_str!("../../corpus/a3_zero_path.bqv"),
        "kronecker" => include_str!("../../corpus/kronecker.bqv"),
        other => panic!("no corpus file {other}"),
    }
}

// ---------------------------------------------------------------------------
// Dense linear algebra over a field, by plain Gaussian elimination.

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for k in 0..ncols {
                    let t = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - &t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dense(field: FieldSpec, v: &SparseVec, len: usize) -> Vec<Scalar> {
    v.to_dense(field, len)
}

/// Basis element of a path, by multiplying arrow images in the algebra.
pub fn path_vector(a: &FiniteDimAlgebra, p: &Path) -> SparseVec {
    let mut v = SparseVec::unit(a.idempotents()[p.source], a.field().one());
    for &arrow in &p.arrows {
        v = a.multiply(&v, &a.arrow_images()[arrow]);
    }
    v
}

/// All minimal dependent subsets of a vector configuration, by exhaustive search.
pub fn brute_circuits(vectors: &[Vec<Scalar>]) -> BTreeSet<Vec<usize>> {
    let n = vectors.len();
    assert!(n <= 12, "exhaustive search only on small classes");
    let dependent = |mask: u32| {
        let rows: Vec<Vec<Scalar>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vectors[i].clone()).collect();
        rank(&rows) < rows.len()
    };
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        if !dependent(mask) {
            continue;
        }
        let minimal = (0..n).filter(|i| mask >> i & 1 == 1).all(|i| !dependent(mask & !(1 << i)));
        if minimal {
            out.insert((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Fundamental group from minimal relations, without the library's complex.

/// Invariant factors of an integer matrix given by rows, by elementary row and
/// column operations.
pub fn invariant_factors(mut m: Vec<Vec<i128>>, ncols: usize) -> Vec<i128> {
    let nrows = m.len();
    let mut out = Vec::new();
    for t in 0..nrows.min(ncols) {
        let pivot = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..nrows {
                let q = m[i][t] / m[t][t];
                for j in t..ncols {
                    m[i][j] -= q * m[t][j];
                }
            }
            for j in t + 1..ncols {
                let q = m[t][j] / m[t][t];
                for row in m.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            let row_rest = (t + 1..nrows).filter(|&i| m[i][t] != 0).min_by_key(|&i| m[i][t].abs());
            let col_rest = (t + 1..ncols).filter(|&j| m[t][j] != 0).min_by_key(|&j| m[t][j].abs());
            if let Some(i) = row_rest {
                m.swap(t, i);
                continue;
            }
            if let Some(j) = col_rest {
                for row in m.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % m[t][t] != 0));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
pub struct GroupOracle {
    pub free_rank: usize,
    pub torsion: Vec<i128>,
    pub dual_dim: usize,
}

impl GroupOracle {
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Arrows outside a breadth-first spanning forest.
fn chords(q: &Quiver) -> Vec<usize> {
    let n = q.vertex_count();
    let m = q.arrow_count();
    let mut seen = vec![false; n];
    let mut tree = vec![false; m];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (k, arrow) in q.arrows().iter().enumerate() {
                let next = if arrow.source == v && !seen[arrow.target] {
                    Some(arrow.target)
                } else if arrow.target == v && !seen[arrow.source] {
                    Some(arrow.source)
                } else {
                    None
                };
                if let Some(w) = next {
                    seen[w] = true;
                    tree[k] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (0..m).filter(|&k| !tree[k]).collect()
}

/// `pi_1^ab` and `dim Hom(pi_1, k)` from the identifications: every pair of
/// nonzero paths lying in a common minimal relation is identified.
pub fn pi1_oracle(b: &Bound) -> GroupOracle {
    let a = &b.algebra;
    let q = &b.presentation.quiver;
    let field = a.field();
    let d = b.presentation.degree_bound;
    // paths up to the degree bound, grouped by endpoints, zero paths dropped
    let mut classes: BTreeMap<(usize, usize), Vec<(Path, Vec<Scalar>)>> = BTreeMap::new();
    let mut stack: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    while let Some(p) = stack.pop() {
        let v = path_vector(a, &p);
        if v.is_zero() {
            continue;
        }
        classes.entry((p.source, p.target)).or_default().push((p.clone(), dense(field, &v, a.dim())));
        if p.len() < d {
            for k in q.out_arrows(p.target) {
                stack.push(p.concat(&q.arrow_path(k)).unwrap());
            }
        }
    }
    let chord_list = chords(q);
    let m = q.arrow_count();
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for members in classes.values() {
        if members.len() < 2 {
            continue;
        }
        let vectors: Vec<Vec<Scalar>> = members.iter().map(|(_, v)| v.clone()).collect();
        for circuit in brute_circuits(&vectors) {
            for w in circuit.windows(2) {
                let (p, r) = (&members[w[0]].0, &members[w[1]].0);
                let cp = p.arrow_counts(m);
                let cr = r.arrow_counts(m);
                // closed chain p - r, in chord coordinates
                relations.push(chord_list.iter().map(|&c| (cp[c] - cr[c]) as i128).collect());
            }
        }
    }
    let nchords = chord_list.len();
    let factors = invariant_factors(relations.clone(), nchords);
    let nonzero: Vec<i128> = factors.iter().copied().filter(|&x| x != 0).collect();
    let free_rank = nchords - nonzero.len();
    let torsion: Vec<i128> = nonzero.into_iter().filter(|&x| x != 1).collect();
    let dual_rows: Vec<Vec<Scalar>> =
        relations.iter().map(|r| r.iter().map(|&x| field.from_i64(x as i64)).collect()).collect();
    let dual_dim = nchords - if dual_rows.is_empty() { 0 } else { rank(&dual_rows) };
    GroupOracle { free_rank, torsion, dual_dim }
}

// ---------------------------------------------------------------------------
// Random presentations: a small quiver, the cube of the arrow ideal killed, and
// a few random monomial or binomial relations of length two.

#[derive(Clone, Debug)]
pub struct RandomPresentation {
    pub text: String,
    pub field: FieldSpec,
    pub arrow_count: usize,
}

fn paths_of_length(arrows: &[(usize, usize)], n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<(Vec<usize>, usize)> = Vec::new();
    for v in 0..n {
        frontier.push((Vec::new(), v));
    }
    for step in 0..len {
        let mut next = Vec::new();
        for (p, end) in &frontier {
            for (k, &(s, t)) in arrows.iter().enumerate() {
                if s == *end {
                    let mut q = p.clone();
                    q.push(k);
                    next.push((q, t));
                }
            }
        }
        frontier = next;
        if step + 1 == len {
            out = frontier.iter().map(|(p, _)| p.clone()).collect();
        }
    }
    out
}

fn render(p: &[usize]) -> String {
    p.iter().map(|k| format!("a{k}")).collect::<Vec<_>>().join("*")
}

pub fn presentation_text(
    n: usize,
    arrows: &[(usize, usize)],
    field: FieldSpec,
    picks: &[(usize, usize, i64, bool)],
) -> String {
    let mut text = format!("field {field}\nquiver {{\n");
    text.push_str(&(0..n).map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    text.push('\n');
    for (k, (s, t)) in arrows.iter().enumerate() {
        text.push_str(&format!("a{k}: {s} -> {t}\n"));
    }
    text.push_str("}\nrelations {\n");
    for p in paths_of_length(arrows, n, 3) {
        text.push_str(&render(&p));
        text.push('\n');
    }
    let twos = paths_of_length(arrows, n, 2);
    let endpoint = |p: &Vec<usize>| (arrows[p[0]].0, arrows[*p.last().unwrap()].1);
    if !twos.is_empty() {
        for &(i, j, c, monomial) in picks {
            let p = &twos[i % twos.len()];
            let parallel: Vec<&Vec<usize>> = twos.iter().filter(|q| *q != p && endpoint(q) == endpoint(p)).collect();
            if monomial || parallel.is_empty() {
                text.push_str(&render(p));
            } else {
                let q = parallel[j % parallel.len()];
                text.push_str(&format!("{} - {c}*{}", render(p), render(q)));
            }
            text.push('\n');
        }
    }
    text.push_str("}\n");
    text
}

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
    ]
}

pub fn presentation_strategy() -> impl Strategy<Value = RandomPresentation> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 1..=4),
                field_strategy(),
                prop::collection::vec((0usize..64, 0usize..64, 1i64..=4, any::<bool>()), 0..=3),
            )
        })
        .prop_map(|(n, arrows, field, picks)| RandomPresentation {
            text: presentation_text(n, &arrows, field, &picks),
            field,
            arrow_count: arrows.len(),
        })
}

// ---------------------------------------------------------------------------
// Property checks shared by the proptest suites and the acceptance run.

use num_bigint::BigInt;
use proptest::test_runner::TestCaseError;
use quiverhh::hochschild::{
    der0_from_presentation, derivation_space, hh1_from_der0, inner_derivation, theta, theta::theta_coset,
    theta::walk_correction, Character, Endo, Flavor,
};
use quiverhh::homotopy::{analyze, enumerate_circuits, parallel_classes, relation_subspace};
use quiverhh::linalg::{smith_normal_form, IntMatrix};
use quiverhh::quiver::walk_system_with_order;

pub const CASES: u32 = 256;

fn built(rp: &RandomPresentation) -> Result<Bound, TestCaseError> {
    parse_presentation(&rp.text, None)
        .and_then(|p| p.build())
        .map_err(|e| TestCaseError::fail(format!("{e}\n{}", rp.text)))
}

fn leibniz_holds(a: &FiniteDimAlgebra, f: &Endo) -> bool {
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(a.product(i, j));
            let fi = f.column(i);
            let fj = f.column(j);
            let ej = SparseVec::unit(j, a.field().one());
            let ei = SparseVec::unit(i, a.field().one());
            let rhs = a.multiply(fi, &ej).add(&a.multiply(&ei, fj));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn check_leibniz(rp: &RandomPresentation) -> Result<(), TestCaseError> {
    let b = built(rp)?;
    let a = &b.algebra;
    let arrows = der0_from_presentation(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for flavor in [Flavor::Der, Flavor::Der0, Flavor::Inn, Flavor::Inn0] {
        for f in &derivation_space(a, flavor).basis {
            prop_assert!(leibniz_holds(a, f), "{flavor:?} basis element fails Leibniz\n{}", rp.text);
        }
    }
    for f in &arrows {
        prop_assert!(leibniz_holds(a, f), "arrow-solved derivation fails Leibniz\n{}", rp.text);
    }
    prop_assert_eq!(arrows.len(), derivation_space(a, Flavor::Der0).dim());
    Ok(())
}

pub fn check_hh1_tables(rp: &RandomPresentation) -> Result<(), TestCaseError> {
    let b = built(rp)?;
    let a = &b.algebra;
    let h = hh1_from_der0(a, der0_from_presentation(&b).unwrap()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let n = h.dim();
    let reps = h.representatives();
    let zero = SparseVec::new();
    for i in 0..n {
        prop_assert_eq!(h.bracket_entry(i, i), &zero);
        for j in 0..n {
            // the table agrees with commutators of representatives
            let c = reps[i].compose(&reps[j]).sub(&reps[j].compose(&reps[i]));
            prop_assert_eq!(h.coset_of(&c), Some(h.bracket_entry(i, j).clone()));
            prop_assert!(h.bracket_entry(i, j).add(h.bracket_entry(j, i)).is_zero());
        }
    }
    let br = |x: &SparseVec, y: &SparseVec| {
        let mut out = SparseVec::new();
        for (i, s) in x.iter() {
            for (j, t) in y.iter() {
                out.add_scaled(h.bracket_entry(i, j), &(s * t));
            }
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (h.unit(i), h.unit(j), h.unit(k));
                let s = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
                prop_assert!(s.is_zero(), "Jacobi fails on ({i}, {j}, {k})\n{}", rp.text);
            }
        }
    }
    Ok(())
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors as quotients of determinantal divisors.
pub fn determinantal_factors(rows: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (rows.len(), rows[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let minor: Vec<Vec<i128>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn check_snf(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = IntMatrix::from_i64(rows);
    let s = smith_normal_form(&m);
    prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
    let unit = |d: BigInt| d == BigInt::from(1) || d == BigInt::from(-1);
    prop_assert!(unit(s.u.determinant()));
    prop_assert!(unit(s.v.determinant()));
    prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                prop_assert!(s.d.get(i, j) == &BigInt::from(0));
            }
        }
    }
    let got: Vec<i128> = s.invariant_factors().iter().map(|x| i128::try_from(x).unwrap()).collect();
    prop_assert!(got.iter().all(|&x| x > 0));
    prop_assert_eq!(got, determinantal_factors(rows));
    Ok(())
}

pub fn check_theta_independence(
    rp: &RandomPresentation,
    order1: &[usize],
    order2: &[usize],
    coeffs: &[i64],
) -> Result<(), TestCaseError> {
    let b = built(rp)?;
    let a = &b.algebra;
    let q = &b.presentation.quiver;
    let m = q.arrow_count();
    let h = analyze(&b, 64).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let hh = hh1_from_der0(a, der0_from_presentation(&b).unwrap()).unwrap();
    let keep = |o: &[usize]| o.iter().copied().filter(|&k| k < m).collect::<Vec<_>>();
    let w1 = walk_system_with_order(q, &keep(order1));
    let w2 = walk_system_with_order(q, &keep(order2));
    let basis = quiverhh::hochschild::character_space(&w1, &h.complex, a.field());
    let field = a.field();
    let mut values = vec![field.zero(); w1.chords().len()];
    for (f, &c) in basis.iter().zip(coeffs.iter().cycle()) {
        for (v, x) in values.iter_mut().zip(&f.values) {
            *v = &*v + &(x * &field.from_i64(c));
        }
    }
    let f = Character { field, chords: w1.chords(), values };
    let t1 = theta(&b, &w1, &f, &h.complex).unwrap();
    let t2 = theta(&b, &w2, &f, &h.complex).unwrap();
    prop_assert!(leibniz_holds(a, &t1));
    let c1 = theta_coset(&b, &w1, &f, &h.complex, &hh).unwrap();
    let c2 = theta_coset(&b, &w2, &f, &h.complex, &hh).unwrap();
    prop_assert_eq!(c1, c2);
    let g = walk_correction(&f, &w1, &w2, m);
    let mut c = SparseVec::new();
    for (i, gi) in g.iter().enumerate() {
        c.add_term(a.idempotents()[i], gi);
    }
    prop_assert_eq!(t2.sub(&t1), inner_derivation(a, &c));
    Ok(())
}

pub fn check_circuits(rp: &RandomPresentation) -> Result<(), TestCaseError> {
    let b = built(rp)?;
    let a = &b.algebra;
    let field = a.field();
    for class in parallel_classes(&b.rewrite) {
        if class.paths.len() > 10 {
            continue;
        }
        let r = relation_subspace(a, &b.rewrite, &class).unwrap();
        let got: BTreeSet<Vec<usize>> = if r.dim() == 0 {
            BTreeSet::new()
        } else {
            enumerate_circuits(&r, 64)
                .unwrap()
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.sort_unstable();
                    c
                })
                .collect()
        };
        let vectors: Vec<Vec<Scalar>> = class.paths.iter().map(|p| dense(field, &path_vector(a, p), a.dim())).collect();
        prop_assert_eq!(got, brute_circuits(&vectors), "class {:?}\n{}", class.paths, rp.text);
    }
    Ok(())
}
