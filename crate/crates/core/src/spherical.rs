//! Filtered representations of a filtered Lie algebra: the level
//! compatibility check for the action, morphism spaces of the filtered
//! equivariant category, a one-dimensional single-ray preset, and the
//! direct-summand test for a sublattice of a character lattice.

use crate::error::{Error, Result};
use crate::filtration::{Filtration, MultiFiltration};
use crate::linalg::{smith_normal_form, IntegerMatrix, Rational, RationalMatrix};
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;

/// A Lie algebra acting on a representation space, with a filtration of the
/// Lie algebra for every ray. Structure constants are optional; when given,
/// the action matrices must realize them as commutators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieFiltrationData {
    lie_dim: usize,
    action: Vec<RationalMatrix>,
    brackets: Option<Vec<Vec<Vec<Rational>>>>,
    lie_levels: BTreeMap<String, Filtration>,
}

impl LieFiltrationData {
    pub fn new(
        lie_dim: usize,
        action: Vec<RationalMatrix>,
        brackets: Option<Vec<Vec<Vec<Rational>>>>,
        lie_levels: BTreeMap<String, Filtration>,
    ) -> Result<Self> {
        if action.len() != lie_dim {
            return Err(Error::BadRep(format!(
                "{} action matrices for a Lie algebra of dimension {lie_dim}",
                action.len()
            )));
        }
        let w = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.rows() != w || m.cols() != w {
                return Err(Error::BadRep("action matrices must be square and equal-sized".into()));
            }
        }
        for (ray, f) in &lie_levels {
            if f.ambient_dim() != lie_dim {
                return Err(Error::BadRep(format!(
                    "Lie filtration at ray `{ray}` lives in dimension {}, expected {lie_dim}",
                    f.ambient_dim()
                )));
            }
        }
        if let Some(c) = &brackets {
            if c.len() != lie_dim || c.iter().any(|r| r.len() != lie_dim)
                || c.iter().flatten().any(|v| v.len() != lie_dim)
            {
                return Err(Error::BadRep("structure constants must be lie_dim^3".into()));
            }
            for i in 0..lie_dim {
                for j in 0..lie_dim {
                    let mut expected = RationalMatrix::zero(w, w);
                    for k in 0..lie_dim {
                        expected = expected.add(&action[k].scale(&c[i][j][k]))?;
                    }
                    let commutator =
                        action[i].mul(&action[j])?.sub(&action[j].mul(&action[i])?)?;
                    if commutator != expected {
                        return Err(Error::BadRep(format!(
                            "action does not realize the bracket of elements {i} and {j}"
                        )));
                    }
                }
            }
        }
        Ok(LieFiltrationData { lie_dim, action, brackets, lie_levels })
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_dim
    }

    pub fn action(&self) -> &[RationalMatrix] {
        &self.action
    }

    pub fn brackets(&self) -> Option<&Vec<Vec<Vec<Rational>>>> {
        self.brackets.as_ref()
    }

    pub fn lie_levels(&self) -> &BTreeMap<String, Filtration> {
        &self.lie_levels
    }
}

/// An object of the filtered category: a space, a filtered Lie action on
/// it, and one filtration of the space per ray.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredRep {
    w_dim: usize,
    lie: LieFiltrationData,
    mf: MultiFiltration,
}

impl FilteredRep {
    pub fn new(w_dim: usize, lie: LieFiltrationData, mf: MultiFiltration) -> Result<Self> {
        if mf.ambient_dim() != w_dim {
            return Err(Error::BadRep(format!(
                "filtrations on dimension {}, expected {w_dim}",
                mf.ambient_dim()
            )));
        }
        for m in lie.action() {
            if m.rows() != w_dim {
                return Err(Error::BadRep(format!(
                    "{}x{} action matrix on a space of dimension {w_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let lie_rays: Vec<&String> = lie.lie_levels.keys().collect();
        let w_rays: Vec<&String> = mf.per_ray().keys().collect();
        if lie_rays != w_rays {
            return Err(Error::BadRep("Lie and space filtrations disagree on rays".into()));
        }
        Ok(FilteredRep { w_dim, lie, mf })
    }

    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    pub fn lie(&self) -> &LieFiltrationData {
        &self.lie
    }

    pub fn mf(&self) -> &MultiFiltration {
        &self.mf
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CViolation {
    pub ray: String,
    pub lie_level: i64,
    pub w_level: i64,
    pub witness: Vec<Rational>,
}

fn apply_vec(m: &RationalMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) * &v[j]).sum())
        .collect()
}

/// For every ray and every pair of jump levels `(i, j)`, the action of the
/// level-`i` part of the Lie algebra must carry the level-`j` part of the
/// space into its level `i + j`. Violations carry the source vector whose
/// image escapes.
pub fn check_condition_c(rep: &FilteredRep) -> Result<(bool, Vec<CViolation>)> {
    let mut violations = Vec::new();
    for (ray, lie_f) in rep.lie().lie_levels() {
        let w_f = rep.mf().get(ray).expect("validated ray sets");
        for i in lie_f.jump_levels() {
            let lie_space = lie_f.value(i);
            for j in w_f.jump_levels() {
                let source = w_f.value(j);
                let target = w_f.value(i + j);
                'grid: for xi_row in 0..lie_space.dim() {
                    let xi = lie_space.basis().row(xi_row);
                    let mut rho = RationalMatrix::zero(rep.w_dim(), rep.w_dim());
                    for (m, coeff) in xi.iter().enumerate() {
                        rho = rho.add(&rep.lie().action()[m].scale(coeff))?;
                    }
                    for v_row in 0..source.dim() {
                        let v = source.basis().row(v_row);
                        if !target.contains(&apply_vec(&rho, v)) {
                            violations.push(CViolation {
                                ray: ray.clone(),
                                lie_level: i,
                                w_level: j,
                                witness: v.to_vec(),
                            });
                            break 'grid;
                        }
                    }
                }
            }
        }
    }
    Ok((violations.is_empty(), violations))
}

/// Single-ray object with a one-dimensional Lie algebra whose filtration
/// jumps at level -1, so compatibility means the action lowers every level
/// of the space filtration by one.
pub fn pgl2_preset(
    w_dim: usize,
    action: RationalMatrix,
    filtration: Filtration,
) -> Result<FilteredRep> {
    let ray = "0".to_string();
    let lie = LieFiltrationData::new(
        1,
        vec![action],
        None,
        BTreeMap::from([(ray.clone(), Filtration::trivial(1, -1))]),
    )?;
    let mf = MultiFiltration::new(w_dim, BTreeMap::from([(ray, filtration)]))?;
    FilteredRep::new(w_dim, lie, mf)
}

/// Does the action carry each level of the filtration into the level below?
/// The check that `pgl2_preset` instances must reproduce.
pub fn lowers_one_level(action: &RationalMatrix, f: &Filtration) -> Result<bool> {
    let n = f.ambient_dim();
    if action.rows() != n || action.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} action on a space of dimension {n}",
            action.rows(),
            action.cols()
        )));
    }
    for i in f.jump_levels() {
        if !f.value(i).apply(action)?.is_subspace_of(&f.value(i - 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension and a matrix basis of the space of maps intertwining the two
/// Lie actions and preserving every filtration.
pub fn category_hom(a: &FilteredRep, b: &FilteredRep) -> Result<(usize, Vec<RationalMatrix>)> {
    if a.lie().lie_dim() != b.lie().lie_dim() {
        return Err(Error::BadRep(format!(
            "Lie dimensions {} and {} do not match",
            a.lie().lie_dim(),
            b.lie().lie_dim()
        )));
    }
    let a_rays: Vec<&String> = a.mf().per_ray().keys().collect();
    let b_rays: Vec<&String> = b.mf().per_ray().keys().collect();
    if a_rays != b_rays {
        return Err(Error::BadRep("objects disagree on rays".into()));
    }
    let wa = a.w_dim();
    let wb = b.w_dim();
    let vars = wb * wa;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // phi A_m = B_m phi for each Lie basis element
    for m in 0..a.lie().lie_dim() {
        let am = &a.lie().action()[m];
        let bm = &b.lie().action()[m];
        for p in 0..wb {
            for q in 0..wa {
                let mut row = vec![Rational::zero(); vars];
                for r in 0..wa {
                    row[p * wa + r] += am.get(r, q);
                }
                for r in 0..wb {
                    row[r * wa + q] -= bm.get(p, r);
                }
                rows.push(row);
            }
        }
    }
    // phi carries each level of every ray's filtration into its image level
    for (ray, f) in a.mf().per_ray() {
        let g = b.mf().get(ray).expect("checked ray sets");
        for d in f.jump_levels() {
            let fd = f.value(d);
            let ann = g.value(d).basis().kernel();
            for vi in 0..fd.dim() {
                let v = fd.basis().row(vi);
                for ai in 0..ann.rows() {
                    let mut row = vec![Rational::zero(); vars];
                    for p in 0..wb {
                        for q in 0..wa {
                            row[p * wa + q] = ann.get(ai, p) * &v[q];
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let constraints = RationalMatrix::from_rows_in(vars, rows)?;
    let solutions = crate::linalg::solve_linear(&constraints);
    let mut basis = Vec::new();
    for k in 0..solutions.dim() {
        let flat = solutions.basis().row(k);
        let mut m = RationalMatrix::zero(wb, wa);
        for p in 0..wb {
            for q in 0..wa {
                m.set(p, q, flat[p * wa + q].clone());
            }
        }
        basis.push(m);
    }
    Ok((solutions.dim(), basis))
}

/// A sublattice presented by generator columns inside a fixed lattice basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeInclusion {
    generators: IntegerMatrix,
}

impl LatticeInclusion {
    pub fn new(generators: IntegerMatrix) -> Result<Self> {
        if generators.to_rational().rank() != generators.cols() {
            return Err(Error::DependentColumns);
        }
        Ok(LatticeInclusion { generators })
    }

    pub fn generators(&self) -> &IntegerMatrix {
        &self.generators
    }
}

/// The sublattice is a direct summand exactly when every nonzero elementary
/// divisor of its generator matrix is one. Returns the divisors as evidence.
pub fn is_neutralizable(inc: &LatticeInclusion) -> (bool, Vec<BigInt>) {
    let divisors = smith_normal_form(&inc.generators).elementary_divisors();
    let ok = divisors.iter().all(|d| d.is_one());
    (ok, divisors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_rational;

    fn q(x: i64) -> Rational {
        parse_rational(&x.to_string()).unwrap()
    }

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows_in(rows[0].len(), rows.iter().map(|r| qv(r)).collect())
            .unwrap()
    }

    fn span2(rows: &[&[i64]]) -> crate::linalg::Subspace {
        crate::linalg::Subspace::span(2, &rows.iter().map(|r| qv(r)).collect::<Vec<_>>())
            .unwrap()
    }

    fn raising() -> FilteredRep {
        // action sends e1 to e2; e1 enters at level 1, e2 at level 0
        let action = mat(&[&[0, 0], &[1, 0]]);
        let f = Filtration::new(2, vec![(1, span2(&[&[1, 0]]))]).unwrap();
        pgl2_preset(2, action, f).unwrap()
    }

    fn lowering() -> FilteredRep {
        // action sends e2 to e1, but e2 persists through level 2
        let action = mat(&[&[0, 1], &[0, 0]]);
        let f = Filtration::new(
            2,
            vec![(0, crate::linalg::Subspace::full(2)), (2, span2(&[&[0, 1]]))],
        )
        .unwrap();
        pgl2_preset(2, action, f).unwrap()
    }

    #[test]
    fn zero_action_always_passes() {
        let rep =
            pgl2_preset(2, RationalMatrix::zero(2, 2), Filtration::trivial(2, 7)).unwrap();
        assert_eq!(check_condition_c(&rep).unwrap(), (true, vec![]));
    }

    #[test]
    fn raising_passes_and_lowering_fails_with_witness() {
        assert!(check_condition_c(&raising()).unwrap().0);

        let (ok, violations) = check_condition_c(&lowering()).unwrap();
        assert!(!ok);
        assert_eq!(violations.len(), 1);
        let v = &violations[0];
        assert_eq!(v.ray, "0");
        assert_eq!(v.lie_level, -1);
        assert_eq!(v.w_level, 2);
        assert_eq!(v.witness, qv(&[0, 1]));
    }

    #[test]
    fn preset_agrees_with_the_direct_lowering_test() {
        let diagonal = pgl2_preset(
            2,
            mat(&[&[2, 0], &[0, 3]]),
            Filtration::new(2, vec![(1, span2(&[&[1, 0]]))]).unwrap(),
        )
        .unwrap();
        for rep in [raising(), lowering(), diagonal] {
            let f = rep.mf().get("0").unwrap();
            let direct = lowers_one_level(&rep.lie().action()[0], f).unwrap();
            assert_eq!(check_condition_c(&rep).unwrap().0, direct);
        }
    }

    #[test]
    fn condition_c_is_basis_independent() {
        let t = mat(&[&[1, 2], &[1, 3]]);
        let t_inv = t.inverse().unwrap();
        let conjugate = |rep: &FilteredRep| {
            let action = t.mul(&rep.lie().action()[0]).unwrap().mul(&t_inv).unwrap();
            let f = rep.mf().get("0").unwrap();
            let steps = f
                .steps()
                .iter()
                .map(|(l, s)| (*l, s.apply(&t).unwrap()))
                .collect();
            pgl2_preset(2, action, Filtration::new(2, steps).unwrap()).unwrap()
        };
        for rep in [raising(), lowering()] {
            assert_eq!(
                check_condition_c(&rep).unwrap().0,
                check_condition_c(&conjugate(&rep)).unwrap().0
            );
        }
    }

    #[test]
    fn hom_of_an_object_with_itself_contains_the_identity() {
        let rep = raising();
        let (dim, basis) = category_hom(&rep, &rep).unwrap();
        assert!(dim >= 1);
        let flat: Vec<Vec<Rational>> = basis
            .iter()
            .map(|m| (0..2).flat_map(|p| m.row(p).to_vec()).collect())
            .collect();
        let span = crate::linalg::Subspace::span(4, &flat).unwrap();
        assert!(span.contains(&qv(&[1, 0, 0, 1])));
    }

    #[test]
    fn hom_with_a_point_is_zero() {
        let point = pgl2_preset(
            0,
            RationalMatrix::zero(0, 0),
            Filtration::trivial(0, 0),
        )
        .unwrap();
        let rep = raising();
        assert_eq!(category_hom(&rep, &point).unwrap().0, 0);
        assert_eq!(category_hom(&point, &rep).unwrap().0, 0);
    }

    #[test]
    fn hom_dimension_follows_the_level_order() {
        let line = |level: i64| {
            pgl2_preset(1, mat(&[&[5]]), Filtration::trivial(1, level)).unwrap()
        };
        assert_eq!(category_hom(&line(0), &line(1)).unwrap().0, 1);
        assert_eq!(category_hom(&line(1), &line(0)).unwrap().0, 0);
    }

    #[test]
    fn hom_composition_stays_in_hom() {
        let a = raising();
        let b = pgl2_preset(2, mat(&[&[0, 0], &[1, 0]]), Filtration::trivial(2, 1)).unwrap();
        let (_, ab) = category_hom(&a, &b).unwrap();
        let (_, bb) = category_hom(&b, &b).unwrap();
        let (_, ab_all) = category_hom(&a, &b).unwrap();
        let flat: Vec<Vec<Rational>> = ab_all
            .iter()
            .map(|m| (0..2).flat_map(|p| m.row(p).to_vec()).collect())
            .collect();
        let hom_space = crate::linalg::Subspace::span(4, &flat).unwrap();
        for f in &ab {
            for g in &bb {
                let composed = g.mul(f).unwrap();
                let v: Vec<Rational> = (0..2).flat_map(|p| composed.row(p).to_vec()).collect();
                assert!(hom_space.contains(&v));
            }
        }
    }

    #[test]
    fn brackets_must_match_commutators() {
        let a0 = mat(&[&[1, 0], &[0, -1]]);
        let a1 = mat(&[&[0, 1], &[0, 0]]);
        let zero2 = vec![q(0), q(0)];
        let good = vec![
            vec![zero2.clone(), vec![q(0), q(2)]],
            vec![vec![q(0), q(-2)], zero2.clone()],
        ];
        let levels = BTreeMap::from([("0".to_string(), Filtration::trivial(2, 0))]);
        assert!(LieFiltrationData::new(
            2,
            vec![a0.clone(), a1.clone()],
            Some(good),
            levels.clone()
        )
        .is_ok());
        let bad = vec![
            vec![zero2.clone(), vec![q(0), q(1)]],
            vec![vec![q(0), q(-1)], zero2],
        ];
        assert!(matches!(
            LieFiltrationData::new(2, vec![a0, a1], Some(bad), levels),
            Err(Error::BadRep(_))
        ));
    }

    #[test]
    fn rep_constructor_rejects_mismatches() {
        let lie = LieFiltrationData::new(
            1,
            vec![RationalMatrix::zero(2, 2)],
            None,
            BTreeMap::from([("0".to_string(), Filtration::trivial(1, -1))]),
        )
        .unwrap();
        let wrong_ray =
            MultiFiltration::new(2, BTreeMap::from([("1".to_string(), Filtration::trivial(2, 0))]))
                .unwrap();
        assert!(matches!(
            FilteredRep::new(2, lie.clone(), wrong_ray),
            Err(Error::BadRep(_))
        ));
        let wrong_dim =
            MultiFiltration::new(3, BTreeMap::from([("0".to_string(), Filtration::trivial(3, 0))]))
                .unwrap();
        assert!(matches!(FilteredRep::new(3, lie, wrong_dim), Err(Error::BadRep(_))));
    }

    #[test]
    fn neutralizability_fixtures() {
        let inc = |rows: &[Vec<i64>]| {
            LatticeInclusion::new(IntegerMatrix::from_i64_rows(rows).unwrap()).unwrap()
        };
        let (ok, divisors) = is_neutralizable(&inc(&[vec![2]]));
        assert!(!ok);
        assert_eq!(divisors, vec![BigInt::from(2)]);

        for n in 1..=4usize {
            let eye: Vec<Vec<i64>> =
                (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            assert!(is_neutralizable(&inc(&eye)).0);
            let ones: Vec<Vec<i64>> = (0..n).map(|_| vec![1]).collect();
            assert!(is_neutralizable(&inc(&ones)).0);
        }

        assert_eq!(
            LatticeInclusion::new(
                IntegerMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap()
            ),
            Err(Error::DependentColumns)
        );
    }

    #[test]
    fn neutralizability_is_unimodular_invariant() {
        let g = IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 1], vec![3, 3]]).unwrap();
        let u = IntegerMatrix::from_i64_rows(&[
            vec![1, 1, 0],
            vec![0, 1, 0],
            vec![2, 0, 1],
        ])
        .unwrap();
        let v = IntegerMatrix::from_i64_rows(&[vec![1, 0], vec![-3, 1]]).unwrap();
        let base = is_neutralizable(&LatticeInclusion::new(g.clone()).unwrap()).0;
        let left = is_neutralizable(&LatticeInclusion::new(u.mul(&g).unwrap()).unwrap()).0;
        let right = is_neutralizable(&LatticeInclusion::new(g.mul(&v).unwrap()).unwrap()).0;
        assert_eq!(base, left);
        assert_eq!(base, right);
    }
}
