//! Filtrations as graded free modules over a one-variable polynomial ring:
//! the module built from a filtration, its two fibers, and graded Hom
//! dimensions. Modules are presented with an explicit adapted basis of the
//! original space so the round trip can be tested exactly.

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::linalg::{solve_linear, RationalMatrix, Subspace};
use num::Zero;
use std::collections::BTreeMap;

/// A free graded module, recorded as the multiset of its generator levels.
/// A generator at level `d` realizes a filtration jump at `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedFreeModule {
    levels: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(mut levels: Vec<i64>) -> Self {
        levels.sort_unstable();
        GradedFreeModule { levels }
    }

    pub fn rank(&self) -> usize {
        self.levels.len()
    }

    /// Generator levels, ascending.
    pub fn levels(&self) -> &[i64] {
        &self.levels
    }
}

/// A degree-zero map of graded free modules. The `(i, j)` coefficient sends
/// source generator `j` into target generator `i`, which is possible only
/// when the target level is at least the source level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedModuleMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    coefficients: RationalMatrix,
}

impl GradedModuleMap {
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        coefficients: RationalMatrix,
    ) -> Result<Self> {
        if coefficients.rows() != target.rank() || coefficients.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} coefficient matrix for a map of ranks {} -> {}",
                coefficients.rows(),
                coefficients.cols(),
                source.rank(),
                target.rank()
            )));
        }
        for i in 0..target.rank() {
            for j in 0..source.rank() {
                if target.levels()[i] < source.levels()[j] && !coefficients.get(i, j).is_zero() {
                    return Err(Error::BadModule(format!(
                        "coefficient at ({i}, {j}) drops the level from {} to {}",
                        source.levels()[j],
                        target.levels()[i]
                    )));
                }
            }
        }
        Ok(GradedModuleMap { source, target, coefficients })
    }

    pub fn coefficients(&self) -> &RationalMatrix {
        &self.coefficients
    }
}

/// Build the graded module of a filtration together with an adapted basis.
/// Row `i` of the basis is a vector realizing the jump `levels()[i]`; the
/// rows at levels `>= d` span the filtration's space at `d`.
pub fn rees(v_dim: usize, f: &Filtration) -> Result<(GradedFreeModule, RationalMatrix)> {
    if f.ambient_dim() != v_dim {
        return Err(Error::DimensionMismatch(format!(
            "filtration on dim {}, expected {v_dim}",
            f.ambient_dim()
        )));
    }
    let mut tagged: Vec<(i64, Vec<crate::linalg::Rational>)> = Vec::new();
    let mut upper = Subspace::zero(v_dim);
    for (d, drop) in f.jump_profile().into_iter().rev() {
        let cur = f.value(d);
        let piece = upper.complement_within(&cur)?;
        debug_assert_eq!(piece.dim(), drop);
        for row in piece.basis().row_vecs() {
            tagged.push((d, row));
        }
        upper = cur;
    }
    debug_assert!(upper.is_full());
    tagged.sort_by_key(|(d, _)| *d);
    let levels: Vec<i64> = tagged.iter().map(|(d, _)| *d).collect();
    let rows: Vec<Vec<crate::linalg::Rational>> =
        tagged.into_iter().map(|(_, row)| row).collect();
    let basis = RationalMatrix::from_rows_in(v_dim, rows)?;
    Ok((GradedFreeModule::new(levels), basis))
}

/// Reconstruct the filtration: the space at level `d` is spanned by the
/// adapted basis rows whose generator level is at least `d`.
pub fn fiber_at_one(m: &GradedFreeModule, adapted_basis: &RationalMatrix) -> Result<Filtration> {
    let n = m.rank();
    if adapted_basis.rows() != n || adapted_basis.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} basis for a rank-{n} module",
            adapted_basis.rows(),
            adapted_basis.cols()
        )));
    }
    if n == 0 {
        return Filtration::new(0, Vec::new());
    }
    if adapted_basis.rank() != n {
        return Err(Error::SingularBasis);
    }
    let lo = m.levels()[0];
    let hi = m.levels()[n - 1];
    let mut values = Vec::new();
    for d in lo..=hi {
        let rows: Vec<Vec<crate::linalg::Rational>> = (0..n)
            .filter(|&i| m.levels()[i] >= d)
            .map(|i| adapted_basis.row(i).to_vec())
            .collect();
        values.push(Subspace::span(n, &rows)?);
    }
    Filtration::from_value_profile(n, lo, &values)
}

/// Level histogram of the generators: the dimensions of the associated
/// graded pieces.
pub fn fiber_at_zero(m: &GradedFreeModule) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &d in m.levels() {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

/// Dimension of the space of degree-zero maps: the number of generator
/// pairs with target level at least source level.
pub fn graded_hom_dim(a: &GradedFreeModule, b: &GradedFreeModule) -> usize {
    b.levels()
        .iter()
        .map(|&m| a.levels().iter().filter(|&&l| m >= l).count())
        .sum()
}

/// Dimension of the space of linear maps carrying each step of `f` into the
/// same-level step of `g`, found by solving the linear constraints at every
/// level where `f` jumps.
pub fn filtered_hom_dim(f: &Filtration, g: &Filtration) -> Result<usize> {
    let n = f.ambient_dim();
    let m = g.ambient_dim();
    let vars = m * n;
    let mut rows: Vec<Vec<crate::linalg::Rational>> = Vec::new();
    for d in f.jump_levels() {
        let fd = f.value(d);
        let ann = g.value(d).basis().kernel();
        for vi in 0..fd.dim() {
            let v = fd.basis().row(vi);
            for ai in 0..ann.rows() {
                let mut row = vec![crate::linalg::Rational::zero(); vars];
                for p in 0..m {
                    for q in 0..n {
                        row[p * n + q] = ann.get(ai, p) * &v[q];
                    }
                }
                rows.push(row);
            }
        }
    }
    let constraints = RationalMatrix::from_rows_in(vars, rows)?;
    Ok(solve_linear(&constraints).dim())
}

/// Generator levels of the tensor product: all pairwise sums.
pub fn tensor_module(a: &GradedFreeModule, b: &GradedFreeModule) -> GradedFreeModule {
    let mut levels = Vec::with_capacity(a.rank() * b.rank());
    for &x in a.levels() {
        for &y in b.levels() {
            levels.push(x + y);
        }
    }
    GradedFreeModule::new(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_rational;

    fn q(x: i64) -> crate::linalg::Rational {
        parse_rational(&x.to_string()).unwrap()
    }

    fn qv(xs: &[i64]) -> Vec<crate::linalg::Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn two_step() -> Filtration {
        // full at 0, a line through (1, 1) at 1 and 2, zero above
        Filtration::new(
            2,
            vec![
                (0, Subspace::full(2)),
                (2, Subspace::span(2, &[qv(&[1, 1])]).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rees_generator_levels() {
        let (m, basis) = rees(0, &Filtration::trivial(0, 0)).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(basis.rows(), 0);

        let (m, _) = rees(1, &Filtration::trivial(1, -2)).unwrap();
        assert_eq!(m.levels(), &[-2]);

        let (m, basis) = rees(2, &two_step()).unwrap();
        assert_eq!(m.levels(), &[0, 2]);
        assert_eq!(basis.rank(), 2);
        // the level-2 row spans the stored line
        assert!(two_step().value(2).contains(basis.row(1)));
    }

    #[test]
    fn fiber_at_one_reconstruction() {
        let m = GradedFreeModule::new(vec![0, 2]);
        let f = fiber_at_one(&m, &RationalMatrix::identity(2)).unwrap();
        assert!(f.value(0).is_full());
        let line = Subspace::span(2, &[qv(&[0, 1])]).unwrap();
        assert_eq!(f.value(1), line);
        assert_eq!(f.value(2), line);
        assert!(f.value(3).is_zero());

        let singular =
            RationalMatrix::from_rows_in(2, vec![qv(&[1, 1]), qv(&[2, 2])]).unwrap();
        assert_eq!(fiber_at_one(&m, &singular), Err(Error::SingularBasis));
    }

    #[test]
    fn round_trip_is_exact() {
        for f in [
            two_step(),
            Filtration::trivial(3, 5),
            Filtration::new(2, vec![(1, Subspace::span(2, &[qv(&[1, 0])]).unwrap())]).unwrap(),
            Filtration::trivial(0, 0),
        ] {
            let (m, basis) = rees(f.ambient_dim(), &f).unwrap();
            assert_eq!(fiber_at_one(&m, &basis).unwrap(), f);
        }
    }

    #[test]
    fn fiber_at_zero_histogram() {
        assert!(fiber_at_zero(&GradedFreeModule::new(vec![])).is_empty());
        let hist = fiber_at_zero(&GradedFreeModule::new(vec![0, 2, 0]));
        assert_eq!(hist, BTreeMap::from([(0, 2), (2, 1)]));

        let f = two_step();
        let (m, _) = rees(2, &f).unwrap();
        let hist = fiber_at_zero(&m);
        let total: usize = hist.values().sum();
        assert_eq!(total, f.ambient_dim());
        assert_eq!(
            hist,
            f.jump_profile().into_iter().collect::<BTreeMap<i64, usize>>()
        );
    }

    #[test]
    fn graded_hom_examples() {
        let at = |ls: &[i64]| GradedFreeModule::new(ls.to_vec());
        assert_eq!(graded_hom_dim(&at(&[0]), &at(&[0])), 1);
        assert_eq!(graded_hom_dim(&at(&[0]), &at(&[1])), 1);
        assert_eq!(graded_hom_dim(&at(&[1]), &at(&[0])), 0);
        assert_eq!(graded_hom_dim(&at(&[0, 2]), &at(&[1])), 1);
    }

    #[test]
    fn filtered_hom_examples() {
        let t0 = Filtration::trivial(1, 0);
        let t1 = Filtration::trivial(1, 1);
        assert_eq!(filtered_hom_dim(&t0, &t1).unwrap(), 1);
        assert_eq!(filtered_hom_dim(&t1, &t0).unwrap(), 0);

        let t = Filtration::trivial(2, 3);
        assert_eq!(filtered_hom_dim(&t, &t).unwrap(), 4);
    }

    #[test]
    fn graded_hom_matches_filtered_hom() {
        let cases = [
            (two_step(), Filtration::trivial(2, 1)),
            (Filtration::trivial(2, 1), two_step()),
            (two_step(), two_step()),
            (
                Filtration::new(2, vec![(1, Subspace::span(2, &[qv(&[1, 0])]).unwrap())])
                    .unwrap(),
                two_step(),
            ),
        ];
        for (f, g) in cases {
            let (mf, _) = rees(f.ambient_dim(), &f).unwrap();
            let (mg, _) = rees(g.ambient_dim(), &g).unwrap();
            assert_eq!(graded_hom_dim(&mf, &mg), filtered_hom_dim(&f, &g).unwrap());
        }
    }

    #[test]
    fn tensor_levels_are_pairwise_sums() {
        let a = GradedFreeModule::new(vec![1]);
        let b = GradedFreeModule::new(vec![0, 2]);
        assert_eq!(tensor_module(&a, &b).levels(), &[1, 3]);
        assert_eq!(tensor_module(&b, &a).levels(), &[1, 3]);
        let unit = GradedFreeModule::new(vec![0]);
        assert_eq!(tensor_module(&b, &unit), b);
        let c = GradedFreeModule::new(vec![0, 0]);
        assert_eq!(tensor_module(&c, &unit).levels(), &[0, 0]);
    }

    #[test]
    fn rees_is_monoidal_on_levels() {
        use crate::filtration::tensor_filtration;
        let f = Filtration::trivial(1, 1);
        let g = two_step();
        let (mf, _) = rees(1, &f).unwrap();
        let (mg, _) = rees(2, &g).unwrap();
        let (mt, _) = rees(2, &tensor_filtration(&f, &g).unwrap()).unwrap();
        assert_eq!(mt.levels(), tensor_module(&mf, &mg).levels());
    }

    #[test]
    fn graded_map_respects_levels() {
        let src = GradedFreeModule::new(vec![0, 2]);
        let tgt = GradedFreeModule::new(vec![1]);
        let ok = RationalMatrix::from_rows_in(2, vec![qv(&[5, 0])]).unwrap();
        assert!(GradedModuleMap::new(src.clone(), tgt.clone(), ok).is_ok());
        let bad = RationalMatrix::from_rows_in(2, vec![qv(&[0, 1])]).unwrap();
        assert!(matches!(
            GradedModuleMap::new(src, tgt, bad),
            Err(Error::BadModule(_))
        ));
    }
}
