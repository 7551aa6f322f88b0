//! Chart data over a smooth fan: one graded chart per maximal cone, change
//! of basis transitions tagged with character differences, the cocycle and
//! regularity certificates, and invariant global sections.

use crate::error::{Error, Result};
use crate::fan::{region_vertices, Cone, Fan};
use crate::filtration::{check_condition_k, Grading, KFailure, KOutcome, MultiFiltration};
use crate::linalg::{Rational, RationalMatrix, Subspace};
use num::{BigInt, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// One chart: the grading found for a maximal cone, the character lifted
/// from each piece's level tuple, and a basis whose rows are grouped by
/// piece, highest tuple first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartData {
    pub cone: Cone,
    pub grading: Grading,
    pub characters: Vec<Vec<i64>>,
    pub adapted_basis: RationalMatrix,
}

impl ChartData {
    /// The character of each basis row, expanded from the per-piece list.
    pub fn row_characters(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (p, (_, space)) in self.grading.pieces().iter().enumerate() {
            for _ in 0..space.dim() {
                out.push(self.characters[p].clone());
            }
        }
        out
    }
}

/// Change of basis from one chart to another. Row `i` expands target basis
/// vector `i` in the source basis; the entry at `(i, j)` carries the
/// character difference `chi_source(j) - chi_target(i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionData {
    pub source_cone: Cone,
    pub target_cone: Cone,
    pub matrix: Vec<Vec<(Rational, Vec<i64>)>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BuildOutcome {
    Charts(Vec<ChartData>),
    Failed { cone: Cone, failure: KFailure },
    Indeterminate { cone: Cone, detail: String },
}

/// Run the grading search on every maximal cone and lift the tuples to
/// characters. A failed cone stops the build and is named in the outcome.
pub fn build_charts(fan: &Fan, mf: &MultiFiltration) -> Result<BuildOutcome> {
    let n = mf.ambient_dim();
    let mut charts = Vec::new();
    for cone in fan.maximal_cones() {
        if !fan.is_smooth_cone(cone)? {
            return Err(Error::NotSmooth(format!("{:?}", cone.ray_ids)));
        }
        match check_condition_k(mf, &cone.ray_ids)? {
            KOutcome::Failed(failure) => {
                return Ok(BuildOutcome::Failed { cone: cone.clone(), failure })
            }
            KOutcome::Indeterminate(ind) => {
                return Ok(BuildOutcome::Indeterminate { cone: cone.clone(), detail: ind.detail })
            }
            KOutcome::Satisfied(grading) => {
                let mut characters = Vec::new();
                let mut rows = Vec::new();
                for (tuple, space) in grading.pieces() {
                    characters.push(fan.character_lift(cone, tuple)?);
                    rows.extend(space.basis().row_vecs());
                }
                let adapted_basis = RationalMatrix::from_rows_in(n, rows)?;
                charts.push(ChartData { cone: cone.clone(), grading, characters, adapted_basis });
            }
        }
    }
    Ok(BuildOutcome::Charts(charts))
}

/// Transition matrices for every ordered pair of distinct charts.
pub fn build_transitions(charts: &[ChartData]) -> Result<Vec<TransitionData>> {
    let mut out = Vec::new();
    if charts.is_empty() {
        return Ok(out);
    }
    let n = charts[0].adapted_basis.rows();
    for c in charts {
        if c.adapted_basis.rows() != n || c.adapted_basis.cols() != n {
            return Err(Error::DimensionMismatch(
                "charts do not share one ambient space".into(),
            ));
        }
    }
    let inverses: Vec<RationalMatrix> = charts
        .iter()
        .map(|c| c.adapted_basis.inverse().map_err(|_| Error::SingularBasis))
        .collect::<Result<_>>()?;
    for (s, src) in charts.iter().enumerate() {
        let src_chars = src.row_characters();
        for (t, tgt) in charts.iter().enumerate() {
            if s == t {
                continue;
            }
            let tgt_chars = tgt.row_characters();
            let m = tgt.adapted_basis.mul(&inverses[s])?;
            let matrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let chi: Vec<i64> = src_chars[j]
                                .iter()
                                .zip(&tgt_chars[i])
                                .map(|(&a, &b)| a - b)
                                .collect();
                            (m.get(i, j).clone(), chi)
                        })
                        .collect()
                })
                .collect();
            out.push(TransitionData {
                source_cone: src.cone.clone(),
                target_cone: tgt.cone.clone(),
                matrix,
            });
        }
    }
    Ok(out)
}

type Monomial = (Rational, Vec<i64>);

/// Formal product of two monomial matrices: coefficients multiply,
/// characters add, and like characters are collected.
fn monomial_product(
    left: &[Vec<Monomial>],
    right: &[Vec<Monomial>],
) -> Vec<Vec<BTreeMap<Vec<i64>, Rational>>> {
    let rows = left.len();
    let inner = right.len();
    let cols = if inner == 0 { 0 } else { right[0].len() };
    let mut out = vec![vec![BTreeMap::new(); cols]; rows];
    for i in 0..rows {
        for k in 0..cols {
            for j in 0..inner {
                let (lc, lchi) = &left[i][j];
                let (rc, rchi) = &right[j][k];
                if lc.is_zero() || rc.is_zero() {
                    continue;
                }
                let chi: Vec<i64> = lchi.iter().zip(rchi).map(|(&a, &b)| a + b).collect();
                let entry = out[i][k].entry(chi).or_insert_with(Rational::zero);
                *entry += lc * rc;
            }
            out[i][k].retain(|_, c| !c.is_zero());
        }
    }
    out
}

fn identity_monomial(n: usize, char_len: usize) -> Vec<Vec<Monomial>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = if i == j { Rational::from(BigInt::from(1)) } else { Rational::zero() };
                    (c, vec![0; char_len])
                })
                .collect()
        })
        .collect()
}

/// Every composable triple of charts must satisfy
/// `T(a -> c) = T(b -> c) * T(a -> b)` as matrices of monomials. Equal
/// endpoints contribute the identity, so inverse pairs are covered too.
pub fn check_cocycle(transitions: &[TransitionData]) -> bool {
    if transitions.is_empty() {
        return true;
    }
    let mut keys: Vec<Vec<String>> = Vec::new();
    let mut table: BTreeMap<(Vec<String>, Vec<String>), &TransitionData> = BTreeMap::new();
    for t in transitions {
        for key in [&t.source_cone.ray_ids, &t.target_cone.ray_ids] {
            if !keys.contains(key) {
                keys.push(key.clone());
            }
        }
        table.insert((t.source_cone.ray_ids.clone(), t.target_cone.ray_ids.clone()), t);
    }
    let n = transitions[0].matrix.len();
    let char_len = transitions[0]
        .matrix
        .first()
        .and_then(|row| row.first())
        .map_or(0, |(_, chi)| chi.len());
    let id = identity_monomial(n, char_len);
    let lookup = |from: &Vec<String>, to: &Vec<String>| -> Option<Vec<Vec<Monomial>>> {
        if from == to {
            Some(id.clone())
        } else {
            table.get(&(from.clone(), to.clone())).map(|t| t.matrix.clone())
        }
    };
    for a in &keys {
        for b in &keys {
            for c in &keys {
                let (Some(ab), Some(bc), Some(ac)) =
                    (lookup(a, b), lookup(b, c), lookup(a, c))
                else {
                    continue;
                };
                let product = monomial_product(&bc, &ab);
                for i in 0..n {
                    for k in 0..n {
                        let (coeff, chi) = &ac[i][k];
                        let got = &product[i][k];
                        if coeff.is_zero() {
                            if !got.is_empty() {
                                return false;
                            }
                        } else if got.len() != 1 || got.get(chi) != Some(coeff) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularityViolation {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub entry: (usize, usize),
    pub character: Vec<i64>,
}

/// Every nonzero entry's character must pair nonnegatively with the rays
/// shared by the two cones.
pub fn check_regularity(
    fan: &Fan,
    transitions: &[TransitionData],
) -> Result<(bool, Vec<RegularityViolation>)> {
    let mut violations = Vec::new();
    for t in transitions {
        let overlap = Cone {
            ray_ids: t
                .source_cone
                .ray_ids
                .iter()
                .filter(|r| t.target_cone.ray_ids.contains(*r))
                .cloned()
                .collect(),
        };
        for (i, row) in t.matrix.iter().enumerate() {
            for (j, (coeff, chi)) in row.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                if !fan.dual_cone_contains(&overlap, chi)? {
                    violations.push(RegularityViolation {
                        source: t.source_cone.ray_ids.clone(),
                        target: t.target_cone.ray_ids.clone(),
                        entry: (i, j),
                        character: chi.clone(),
                    });
                }
            }
        }
    }
    Ok((violations.is_empty(), violations))
}

fn pair_saturating(chi: &[i64], gen: &[i64]) -> i64 {
    let p: i128 = chi.iter().zip(gen).map(|(&a, &b)| a as i128 * b as i128).sum();
    p.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

fn lattice_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let r = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Vec::new();
    }
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut k = r;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                for j in k + 1..r {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
}

/// Dimension of the invariant sections together with the characters that
/// carry them (one entry per dimension). A character `chi` contributes the
/// intersection over all rays of the filtration space at level
/// `<chi, ray>`; the sum is finite exactly when the rays positively span.
pub fn global_sections(fan: &Fan, mf: &MultiFiltration) -> Result<(usize, Vec<Vec<i64>>)> {
    let n = mf.ambient_dim();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    for ray in fan.rays() {
        if mf.get(&ray.id).is_none() {
            return Err(Error::UnknownRay(ray.id.clone()));
        }
    }
    if !fan.positively_spans() {
        return Err(Error::Unbounded(
            "ray generators do not positively span the lattice".into(),
        ));
    }
    let constraints: Vec<(Vec<i64>, i64)> = fan
        .rays()
        .iter()
        .map(|ray| {
            let f = mf.get(&ray.id).unwrap();
            (ray.generator.clone(), f.max_jump().expect("positive-dimensional filtration"))
        })
        .collect();
    let vertices = region_vertices(fan.rank(), &constraints)?;
    if vertices.is_empty() {
        return Ok((0, Vec::new()));
    }
    let rank = fan.rank();
    let mut lo = vec![i64::MAX; rank];
    let mut hi = vec![i64::MIN; rank];
    for v in &vertices {
        for k in 0..rank {
            let f = v[k].floor().to_integer().to_i64().ok_or_else(|| {
                Error::Unbounded("section region vertex overflows".into())
            })?;
            let c = v[k].ceil().to_integer().to_i64().ok_or_else(|| {
                Error::Unbounded("section region vertex overflows".into())
            })?;
            lo[k] = lo[k].min(f);
            hi[k] = hi[k].max(c);
        }
    }
    let mut total = 0;
    let mut characters = Vec::new();
    for chi in lattice_box(&lo, &hi) {
        let mut space = Subspace::full(n);
        for ray in fan.rays() {
            let level = pair_saturating(&chi, &ray.generator);
            space = space.intersect(&mf.get(&ray.id).unwrap().value(level))?;
            if space.is_zero() {
                break;
            }
        }
        for _ in 0..space.dim() {
            characters.push(chi.clone());
        }
        total += space.dim();
    }
    Ok((total, characters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::Filtration;
    use crate::linalg::parse_rational;

    fn q(x: i64) -> Rational {
        parse_rational(&x.to_string()).unwrap()
    }

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn ray(id: &str, gen: &[i64]) -> crate::fan::Ray {
        crate::fan::Ray { id: id.to_string(), generator: gen.to_vec() }
    }

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p1() -> Fan {
        Fan::new(
            1,
            vec![ray("+", &[1]), ray("-", &[-1])],
            vec![ids(&["+"]), ids(&["-"])],
        )
        .unwrap()
    }

    fn p1xp1() -> Fan {
        Fan::new(
            2,
            vec![
                ray("x+", &[1, 0]),
                ray("x-", &[-1, 0]),
                ray("y+", &[0, 1]),
                ray("y-", &[0, -1]),
            ],
            vec![
                ids(&["x+", "y+"]),
                ids(&["x+", "y-"]),
                ids(&["x-", "y+"]),
                ids(&["x-", "y-"]),
            ],
        )
        .unwrap()
    }

    fn mf(ambient: usize, entries: Vec<(&str, Filtration)>) -> MultiFiltration {
        MultiFiltration::new(
            ambient,
            entries.into_iter().map(|(k, f)| (k.to_string(), f)).collect(),
        )
        .unwrap()
    }

    fn line_bundle_p1(a: i64, b: i64) -> MultiFiltration {
        mf(1, vec![("+", Filtration::trivial(1, a)), ("-", Filtration::trivial(1, b))])
    }

    #[test]
    fn p1_charts_carry_the_expected_characters() {
        let fan = p1();
        let data = line_bundle_p1(2, 3);
        let BuildOutcome::Charts(charts) = build_charts(&fan, &data).unwrap() else {
            panic!("expected charts");
        };
        assert_eq!(charts.len(), 2);
        assert_eq!(charts[0].characters, vec![vec![2]]);
        assert_eq!(charts[1].characters, vec![vec![-3]]);
    }

    #[test]
    fn p1_transition_character_is_the_jump_sum() {
        let fan = p1();
        let data = line_bundle_p1(2, 3);
        let BuildOutcome::Charts(charts) = build_charts(&fan, &data).unwrap() else {
            panic!("expected charts");
        };
        let transitions = build_transitions(&charts).unwrap();
        assert_eq!(transitions.len(), 2);
        let t = transitions
            .iter()
            .find(|t| t.source_cone.ray_ids == ids(&["+"]))
            .unwrap();
        assert_eq!(t.matrix.len(), 1);
        let (coeff, chi) = &t.matrix[0][0];
        assert!(!coeff.is_zero());
        assert_eq!(chi, &vec![5]);
        assert!(check_cocycle(&transitions));
        let (ok, violations) = check_regularity(&fan, &transitions).unwrap();
        assert!(ok && violations.is_empty());
    }

    #[test]
    fn zero_dimensional_space_gives_empty_charts() {
        let fan = p1();
        let data = mf(0, vec![("+", Filtration::trivial(0, 0)), ("-", Filtration::trivial(0, 0))]);
        let BuildOutcome::Charts(charts) = build_charts(&fan, &data).unwrap() else {
            panic!("expected charts");
        };
        assert_eq!(charts.len(), 2);
        assert!(charts.iter().all(|c| c.grading.pieces().is_empty()));
        let transitions = build_transitions(&charts).unwrap();
        assert!(check_cocycle(&transitions));
        assert_eq!(global_sections(&fan, &data).unwrap(), (0, vec![]));
    }

    #[test]
    fn failing_cone_is_named() {
        let fan = Fan::new(
            3,
            vec![ray("a", &[1, 0, 0]), ray("b", &[0, 1, 0]), ray("c", &[0, 0, 1])],
            vec![ids(&["a", "b", "c"])],
        )
        .unwrap();
        let line = |x: i64, y: i64| {
            Filtration::new(2, vec![(1, Subspace::span(2, &[qv(&[x, y])]).unwrap())]).unwrap()
        };
        let data = mf(2, vec![("a", line(1, 0)), ("b", line(0, 1)), ("c", line(1, 1))]);
        match build_charts(&fan, &data).unwrap() {
            BuildOutcome::Failed { cone, failure } => {
                assert_eq!(cone.ray_ids, ids(&["a", "b", "c"]));
                assert_eq!(failure.total, 3);
                assert_eq!(failure.ambient_dim, 2);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn non_smooth_cone_is_an_error() {
        let fan = Fan::new(
            2,
            vec![ray("a", &[1, 0]), ray("b", &[1, 2])],
            vec![ids(&["a", "b"])],
        )
        .unwrap();
        let data = mf(
            1,
            vec![("a", Filtration::trivial(1, 0)), ("b", Filtration::trivial(1, 0))],
        );
        assert!(matches!(build_charts(&fan, &data), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn regularity_checks_the_overlap_pairing() {
        let fan = p1xp1();
        let hand = |chi: Vec<i64>| TransitionData {
            source_cone: Cone { ray_ids: ids(&["x+", "y+"]) },
            target_cone: Cone { ray_ids: ids(&["x+", "y-"]) },
            matrix: vec![vec![(q(1), chi)]],
        };
        let (ok, _) = check_regularity(&fan, &[hand(vec![0, -1])]).unwrap();
        assert!(ok);
        let (ok, violations) = check_regularity(&fan, &[hand(vec![-1, 0])]).unwrap();
        assert!(!ok);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].entry, (0, 0));
        assert_eq!(violations[0].character, vec![-1, 0]);
        assert!(check_regularity(&fan, &[]).unwrap().0);
    }

    #[test]
    fn product_fan_line_bundle_checks_out() {
        let fan = p1xp1();
        let data = mf(
            1,
            vec![
                ("x+", Filtration::trivial(1, 1)),
                ("x-", Filtration::trivial(1, 0)),
                ("y+", Filtration::trivial(1, 1)),
                ("y-", Filtration::trivial(1, 0)),
            ],
        );
        let BuildOutcome::Charts(charts) = build_charts(&fan, &data).unwrap() else {
            panic!("expected charts");
        };
        assert_eq!(charts.len(), 4);
        let transitions = build_transitions(&charts).unwrap();
        assert_eq!(transitions.len(), 12);
        assert!(check_cocycle(&transitions));
        let (ok, _) = check_regularity(&fan, &transitions).unwrap();
        assert!(ok);
        let (h0, chars) = global_sections(&fan, &data).unwrap();
        assert_eq!(h0, 4);
        assert_eq!(chars.len(), 4);
        assert!(chars.contains(&vec![0, 0]) && chars.contains(&vec![1, 1]));
    }

    #[test]
    fn p1_sections_count_matches_the_degree() {
        let fan = p1();
        for n in -3..=5i64 {
            let data = line_bundle_p1(n, 0);
            let (h0, chars) = global_sections(&fan, &data).unwrap();
            assert_eq!(h0 as i64, (n + 1).max(0));
            assert_eq!(chars.len(), h0);
        }
    }

    #[test]
    fn rank_two_split_bundle_on_p1() {
        let fan = p1();
        let f_plus =
            Filtration::new(2, vec![(1, Subspace::span(2, &[qv(&[1, 0])]).unwrap())]).unwrap();
        let data = mf(2, vec![("+", f_plus), ("-", Filtration::trivial(2, 0))]);
        let BuildOutcome::Charts(charts) = build_charts(&fan, &data).unwrap() else {
            panic!("expected charts");
        };
        let transitions = build_transitions(&charts).unwrap();
        assert!(check_cocycle(&transitions));
        assert!(check_regularity(&fan, &transitions).unwrap().0);
        let (h0, _) = global_sections(&fan, &data).unwrap();
        assert_eq!(h0, 3);
    }

    #[test]
    fn sections_are_basis_independent() {
        let fan = p1();
        let f_plus =
            Filtration::new(2, vec![(1, Subspace::span(2, &[qv(&[1, 0])]).unwrap())]).unwrap();
        let f_minus =
            Filtration::new(2, vec![(0, Subspace::span(2, &[qv(&[0, 1])]).unwrap())]).unwrap();
        let data = mf(2, vec![("+", f_plus.clone()), ("-", f_minus.clone())]);
        let t = RationalMatrix::from_rows_in(2, vec![qv(&[1, 2]), qv(&[1, 3])]).unwrap();
        let transform = |f: &Filtration| {
            let steps = f
                .steps()
                .iter()
                .map(|(l, s)| (*l, s.apply(&t).unwrap()))
                .collect();
            Filtration::new(2, steps).unwrap()
        };
        let moved = mf(2, vec![("+", transform(&f_plus)), ("-", transform(&f_minus))]);
        assert_eq!(
            global_sections(&fan, &data).unwrap().0,
            global_sections(&fan, &moved).unwrap().0
        );
    }

    #[test]
    fn half_fan_sections_are_unbounded() {
        let fan = Fan::new(1, vec![ray("+", &[1])], vec![ids(&["+"])]).unwrap();
        let data = mf(1, vec![("+", Filtration::trivial(1, 0))]);
        assert!(matches!(global_sections(&fan, &data), Err(Error::Unbounded(_))));
    }

    #[test]
    fn cocycle_rejects_tampered_transitions() {
        let fan = p1xp1();
        let data = mf(
            1,
            vec![
                ("x+", Filtration::trivial(1, 2)),
                ("x-", Filtration::trivial(1, 0)),
                ("y+", Filtration::trivial(1, 1)),
                ("y-", Filtration::trivial(1, 0)),
            ],
        );
        let BuildOutcome::Charts(charts) = build_charts(&fan, &data).unwrap() else {
            panic!("expected charts");
        };
        let mut transitions = build_transitions(&charts).unwrap();
        assert!(check_cocycle(&transitions));
        transitions[0].matrix[0][0].0 = q(7);
        assert!(!check_cocycle(&transitions));
    }
}
