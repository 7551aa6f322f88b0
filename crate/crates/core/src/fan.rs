//! Rational polyhedral fans in a lattice, with the validation a checker
//! needs: primitive ray generators, strongly convex cones with extremal
//! generators, and pairwise intersections that are common faces.

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntegerMatrix, Rational};
use crate::lp;
use num::{BigInt, Integer, One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ray {
    pub id: String,
    pub generator: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    pub ray_ids: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<Ray>,
    maximal_cones: Vec<Cone>,
    by_id: BTreeMap<String, usize>,
}

/// Divide out the gcd, keeping direction. Errors on the zero vector.
pub fn primitive_generator(v: &[i64]) -> Result<Vec<i64>> {
    let mut g: i64 = 0;
    for &x in v {
        g = g.gcd(&x);
    }
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

fn dot(chi: &[i64], gen: &[i64]) -> i128 {
    chi.iter().zip(gen).map(|(&a, &b)| a as i128 * b as i128).sum()
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<Ray>, maximal_cones: Vec<Vec<String>>) -> Result<Self> {
        let mut by_id = BTreeMap::new();
        for (i, ray) in rays.iter().enumerate() {
            if ray.generator.len() != rank {
                return Err(Error::BadFan(format!(
                    "ray `{}` has {} coordinates, expected {rank}",
                    ray.id,
                    ray.generator.len()
                )));
            }
            if primitive_generator(&ray.generator)? != ray.generator {
                return Err(Error::BadFan(format!("ray `{}` is not primitive", ray.id)));
            }
            if by_id.insert(ray.id.clone(), i).is_some() {
                return Err(Error::BadFan(format!("duplicate ray id `{}`", ray.id)));
            }
        }

        let cones: Vec<Cone> = maximal_cones.into_iter().map(|ray_ids| Cone { ray_ids }).collect();
        let fan = Fan { rank, rays, maximal_cones: cones, by_id };

        for cone in &fan.maximal_cones {
            fan.validate_cone(cone)?;
        }
        for i in 0..fan.maximal_cones.len() {
            for j in 0..fan.maximal_cones.len() {
                if i == j {
                    continue;
                }
                let a = &fan.maximal_cones[i];
                let b = &fan.maximal_cones[j];
                if a.ray_ids.iter().all(|r| b.ray_ids.contains(r)) {
                    return Err(Error::BadFan(format!(
                        "cone {:?} is contained in cone {:?}; only maximal cones may be listed",
                        a.ray_ids, b.ray_ids
                    )));
                }
                if i < j {
                    fan.check_common_face(a, b)?;
                }
            }
        }
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    pub fn ray(&self, id: &str) -> Result<&Ray> {
        self.by_id
            .get(id)
            .map(|&i| &self.rays[i])
            .ok_or_else(|| Error::UnknownRay(id.to_string()))
    }

    fn generators(&self, cone: &Cone) -> Result<Vec<Vec<i64>>> {
        cone.ray_ids.iter().map(|id| Ok(self.ray(id)?.generator.clone())).collect()
    }

    /// Generator matrix of a cone, one ray per row.
    pub fn cone_matrix(&self, cone: &Cone) -> Result<IntegerMatrix> {
        let gens = self.generators(cone)?;
        if gens.is_empty() {
            return Ok(IntegerMatrix::zero(0, self.rank));
        }
        IntegerMatrix::from_i64_rows(&gens)
    }

    fn validate_cone(&self, cone: &Cone) -> Result<()> {
        for (i, id) in cone.ray_ids.iter().enumerate() {
            self.ray(id)?;
            if cone.ray_ids[..i].contains(id) {
                return Err(Error::BadFan(format!("cone repeats ray `{id}`")));
            }
        }
        let gens = self.generators(cone)?;
        let s = gens.len();
        if s == 0 {
            return Ok(());
        }
        // strong convexity: no nonzero nonnegative combination vanishes
        let mut a: Vec<Vec<Rational>> = (0..self.rank)
            .map(|r| (0..s).map(|k| Rational::from(BigInt::from(gens[k][r]))).collect())
            .collect();
        a.push(vec![Rational::one(); s]);
        let mut b = vec![Rational::zero(); self.rank];
        b.push(Rational::one());
        if lp::feasible(&a, &b) {
            return Err(Error::BadFan(format!(
                "cone {:?} contains a line or a vanishing positive combination",
                cone.ray_ids
            )));
        }
        // extremality: no listed ray is a nonnegative combination of the others
        for j in 0..s {
            let a: Vec<Vec<Rational>> = (0..self.rank)
                .map(|r| {
                    (0..s)
                        .filter(|&k| k != j)
                        .map(|k| Rational::from(BigInt::from(gens[k][r])))
                        .collect()
                })
                .collect();
            let b: Vec<Rational> =
                (0..self.rank).map(|r| Rational::from(BigInt::from(gens[j][r]))).collect();
            if lp::feasible(&a, &b) {
                return Err(Error::BadFan(format!(
                    "ray `{}` is not extremal in cone {:?}",
                    cone.ray_ids[j], cone.ray_ids
                )));
            }
        }
        Ok(())
    }

    /// The two cones meet in a common face exactly when some functional
    /// vanishes on the shared rays, is strictly positive on the rest of `a`,
    /// and strictly negative on the rest of `b`.
    fn check_common_face(&self, a: &Cone, b: &Cone) -> Result<()> {
        let shared: Vec<&String> =
            a.ray_ids.iter().filter(|r| b.ray_ids.contains(r)).collect();
        let only_a: Vec<&String> =
            a.ray_ids.iter().filter(|r| !b.ray_ids.contains(r)).collect();
        let only_b: Vec<&String> =
            b.ray_ids.iter().filter(|r| !a.ray_ids.contains(r)).collect();

        // variables: chi = p - q with p, q >= 0, one slack per strict row
        let r = self.rank;
        let strict = only_a.len() + only_b.len();
        let cols = 2 * r + strict;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let mut slack = 0;
        let mut push_row = |gen: &[i64], sign: i64, strict_row: bool| {
            let mut row = vec![Rational::zero(); cols];
            for k in 0..r {
                let c = Rational::from(BigInt::from(sign * gen[k]));
                row[k] = c.clone();
                row[r + k] = -c;
            }
            if strict_row {
                row[2 * r + slack] = -Rational::one();
                slack += 1;
                rhs.push(Rational::one());
            } else {
                rhs.push(Rational::zero());
            }
            rows.push(row);
        };
        for id in &shared {
            push_row(&self.ray(id)?.generator, 1, false);
        }
        for id in &only_a {
            push_row(&self.ray(id)?.generator, 1, true);
        }
        for id in &only_b {
            push_row(&self.ray(id)?.generator, -1, true);
        }
        if lp::feasible(&rows, &rhs) {
            Ok(())
        } else {
            Err(Error::BadFan(format!(
                "cones {:?} and {:?} do not intersect in a common face",
                a.ray_ids, b.ray_ids
            )))
        }
    }

    /// A cone is smooth when its ray generators extend to a lattice basis:
    /// as many independent rows as rays, all elementary divisors one.
    pub fn is_smooth_cone(&self, cone: &Cone) -> Result<bool> {
        let s = cone.ray_ids.len();
        if s == 0 {
            return Ok(true);
        }
        if s > self.rank {
            return Ok(false);
        }
        let m = self.cone_matrix(cone)?;
        let snf = smith_normal_form(&m);
        let divisors = snf.elementary_divisors();
        Ok(divisors.len() == s && divisors.iter().all(|d| d.is_one()))
    }

    /// Is `chi` nonnegative against every ray of the cone?
    pub fn dual_cone_contains(&self, cone: &Cone, chi: &[i64]) -> Result<bool> {
        if chi.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "character of length {}, lattice rank {}",
                chi.len(),
                self.rank
            )));
        }
        for id in &cone.ray_ids {
            if dot(chi, &self.ray(id)?.generator) < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Integral character pairing to `tuple[k]` against the cone's k-th ray,
    /// canonicalized by zeroing the coordinates the cone does not see (in the
    /// Smith basis of its generator matrix).
    pub fn character_lift(&self, cone: &Cone, tuple: &[i64]) -> Result<Vec<i64>> {
        let s = cone.ray_ids.len();
        if tuple.len() != s {
            return Err(Error::DimensionMismatch(format!(
                "tuple of length {}, cone with {s} rays",
                tuple.len()
            )));
        }
        if !self.is_smooth_cone(cone)? {
            return Err(Error::NotSmooth(format!("{:?}", cone.ray_ids)));
        }
        if s == 0 {
            return Ok(vec![0; self.rank]);
        }
        let m = self.cone_matrix(cone)?;
        let snf = smith_normal_form(&m);
        let int_inverse = |x: &IntegerMatrix| -> Result<IntegerMatrix> {
            let inv = x.to_rational().inverse()?;
            let mut out = IntegerMatrix::zero(inv.rows(), inv.cols());
            for i in 0..inv.rows() {
                for j in 0..inv.cols() {
                    let e = inv.get(i, j);
                    debug_assert!(e.denom().is_one(), "unimodular inverse must be integral");
                    out.set(i, j, e.numer().clone());
                }
            }
            Ok(out)
        };
        let u_inv = int_inverse(&snf.u)?;
        let v_inv = int_inverse(&snf.v)?;
        // m chi = tuple becomes d (v chi) = u^-1 tuple; divisors are all one
        let t = IntegerMatrix::from_rows_in(
            1,
            tuple.iter().map(|&x| vec![BigInt::from(x)]).collect(),
        )?;
        let y = u_inv.mul(&t)?;
        let mut y_ext = IntegerMatrix::zero(self.rank, 1);
        for i in 0..s {
            y_ext.set(i, 0, y.get(i, 0).clone());
        }
        let chi = v_inv.mul(&y_ext)?;
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let e = chi.get(i, 0);
            out.push(
                i64::try_from(e).map_err(|_| Error::NoLift("character overflows i64".into()))?,
            );
        }
        for (k, id) in cone.ray_ids.iter().enumerate() {
            if dot(&out, &self.ray(id)?.generator) != tuple[k] as i128 {
                return Err(Error::NoLift(format!(
                    "no integral character pairs to {:?} on cone {:?}",
                    tuple, cone.ray_ids
                )));
            }
        }
        Ok(out)
    }

    /// Do the ray generators positively span the whole lattice? True exactly
    /// when `{chi : <chi, ray> <= 0 for all rays}` is the origin alone.
    pub fn positively_spans(&self) -> bool {
        let r = self.rank;
        'units: for k in 0..2 * r {
            let mut target = vec![Rational::zero(); r];
            target[k / 2] = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            let a: Vec<Vec<Rational>> = (0..r)
                .map(|row| {
                    self.rays
                        .iter()
                        .map(|ray| Rational::from(BigInt::from(ray.generator[row])))
                        .collect()
                })
                .collect();
            if lp::feasible(&a, &target) {
                continue 'units;
            }
            return false;
        }
        true
    }
}

/// Vertices of `{chi : <chi, ray_k> <= bound_k}` gathered from all invertible
/// rank-size subsets of the constraints. Assumes the region is bounded.
pub(crate) fn region_vertices(
    rank: usize,
    constraints: &[(Vec<i64>, i64)],
) -> Result<Vec<Vec<Rational>>> {
    use crate::linalg::RationalMatrix;
    if rank == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut vertices = Vec::new();
    let m = constraints.len();
    fn subsets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            subsets(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(m, rank, 0, &mut Vec::new(), &mut all);
    for subset in all {
        let rows: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| {
                constraints[i]
                    .0
                    .iter()
                    .map(|&x| Rational::from(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let mat = RationalMatrix::from_rows_in(rank, rows)?;
        let Ok(inv) = mat.inverse() else { continue };
        let b = RationalMatrix::from_rows_in(
            1,
            subset.iter().map(|&i| vec![Rational::from(BigInt::from(constraints[i].1))]).collect(),
        )?;
        let x = inv.mul(&b)?;
        let chi: Vec<Rational> = (0..rank).map(|i| x.get(i, 0).clone()).collect();
        let ok = constraints.iter().all(|(gen, bound)| {
            let lhs: Rational = gen
                .iter()
                .zip(&chi)
                .map(|(&g, c)| Rational::from(BigInt::from(g)) * c)
                .sum();
            lhs <= Rational::from(BigInt::from(*bound))
        });
        if ok {
            vertices.push(chi);
        }
    }
    Ok(vertices)
}
