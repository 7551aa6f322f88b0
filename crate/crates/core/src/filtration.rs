//! Finite decreasing filtrations of `Q^n` and gradings compatible with
//! several filtrations at once.
//!
//! A filtration is a decreasing step function from levels (integers) to
//! subspaces that equals the full space far below and the zero space far
//! above. Stored representation: a step `(level, space)` holds from just
//! above the previous stored level through its own level; the full space is
//! implicit below the smallest stored level and the zero space above the
//! largest. Canonical form drops a leading full-space step whose extent is
//! adjacent to the implicit bottom, so equal step functions have equal
//! representations.

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Filtration {
    ambient: usize,
    steps: Vec<(i64, Subspace)>,
}

impl Filtration {
    pub fn new(ambient: usize, steps: Vec<(i64, Subspace)>) -> Result<Self> {
        if ambient > 0 && steps.is_empty() {
            return Err(Error::BadFiltration(
                "a positive-dimensional filtration needs at least one step".into(),
            ));
        }
        for (i, (level, space)) in steps.iter().enumerate() {
            if space.ambient_dim() != ambient {
                return Err(Error::BadFiltration(format!(
                    "step at level {level} lives in dimension {}, expected {ambient}",
                    space.ambient_dim()
                )));
            }
            if space.is_zero() {
                return Err(Error::BadFiltration(format!(
                    "step at level {level} stores the zero space"
                )));
            }
            if i > 0 {
                let (prev_level, prev_space) = &steps[i - 1];
                if level <= prev_level {
                    return Err(Error::BadFiltration(format!(
                        "levels must strictly increase ({prev_level} then {level})"
                    )));
                }
                if !(space.is_subspace_of(prev_space) && space.dim() < prev_space.dim()) {
                    return Err(Error::BadFiltration(format!(
                        "step at level {level} is not a proper subspace of its predecessor"
                    )));
                }
            }
        }
        let mut steps = steps;
        if steps.len() >= 2 && steps[0].1.is_full() && steps[1].0 == steps[0].0 + 1 {
            steps.remove(0);
        }
        Ok(Filtration { ambient, steps })
    }

    /// Full space through `level`, zero above it.
    pub fn trivial(ambient: usize, level: i64) -> Self {
        if ambient == 0 {
            Filtration { ambient, steps: Vec::new() }
        } else {
            Filtration { ambient, steps: vec![(level, Subspace::full(ambient))] }
        }
    }

    /// Rebuild from a window of values: `values[t]` is the space at level
    /// `lo + t`; the function is full below `lo` and zero above the window.
    pub fn from_value_profile(ambient: usize, lo: i64, values: &[Subspace]) -> Result<Self> {
        let zero = Subspace::zero(ambient);
        let full = Subspace::full(ambient);
        let mut steps = Vec::new();
        if let Some(first) = values.first() {
            if *first != full {
                steps.push((lo - 1, full));
            }
        }
        for (t, v) in values.iter().enumerate() {
            let next = values.get(t + 1).unwrap_or(&zero);
            debug_assert!(next.is_subspace_of(v), "value profile must be decreasing");
            if v != next && !v.is_zero() {
                steps.push((lo + t as i64, v.clone()));
            }
        }
        Filtration::new(ambient, steps)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &[(i64, Subspace)] {
        &self.steps
    }

    /// The space at a level.
    pub fn value(&self, level: i64) -> Subspace {
        match self.steps.first() {
            None => Subspace::zero(self.ambient),
            Some((first, _)) if level < *first => Subspace::full(self.ambient),
            _ => self
                .steps
                .iter()
                .find(|(l, _)| *l >= level)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(|| Subspace::zero(self.ambient)),
        }
    }

    /// Levels `d` where the space at `d` strictly contains the space at `d+1`.
    pub fn jump_levels(&self) -> Vec<i64> {
        let mut out = Vec::new();
        if let Some((first, space)) = self.steps.first() {
            if !space.is_full() {
                out.push(first - 1);
            }
        }
        out.extend(self.steps.iter().map(|(l, _)| *l));
        out
    }

    /// Jump levels with the dimension drop at each.
    pub fn jump_profile(&self) -> Vec<(i64, usize)> {
        self.jump_levels()
            .into_iter()
            .map(|d| (d, self.value(d).dim() - self.value(d + 1).dim()))
            .collect()
    }

    pub fn min_jump(&self) -> Option<i64> {
        self.jump_levels().first().copied()
    }

    pub fn max_jump(&self) -> Option<i64> {
        self.jump_levels().last().copied()
    }

    pub fn shift(&self, delta: i64) -> Self {
        Filtration {
            ambient: self.ambient,
            steps: self.steps.iter().map(|(l, s)| (l + delta, s.clone())).collect(),
        }
    }
}

/// Level-wise tensor product: the space at level `k` is the sum of
/// `a(i) (x) b(k - i)` over all splittings `i + j = k`.
pub fn tensor_filtration(a: &Filtration, b: &Filtration) -> Result<Filtration> {
    let ambient = a.ambient_dim() * b.ambient_dim();
    if ambient == 0 {
        return Filtration::new(0, Vec::new());
    }
    let ja = a.jump_levels();
    let jb = b.jump_levels();
    let lo = ja[0] + jb[0];
    let hi = ja[ja.len() - 1] + jb[jb.len() - 1];
    let mut values = Vec::new();
    for k in lo..=hi {
        let mut v = Subspace::zero(ambient);
        for &i in &ja {
            let term = a.value(i).tensor(&b.value(k - i));
            v = v.sum(&term)?;
        }
        values.push(v);
    }
    Filtration::from_value_profile(ambient, lo, &values)
}

/// A family of filtrations of one space, keyed by ray identifier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiFiltration {
    ambient: usize,
    per_ray: BTreeMap<String, Filtration>,
}

impl MultiFiltration {
    pub fn new(ambient: usize, per_ray: BTreeMap<String, Filtration>) -> Result<Self> {
        for (ray, f) in &per_ray {
            if f.ambient_dim() != ambient {
                return Err(Error::BadFiltration(format!(
                    "filtration for ray `{ray}` lives in dimension {}, expected {ambient}",
                    f.ambient_dim()
                )));
            }
        }
        Ok(MultiFiltration { ambient, per_ray })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, ray: &str) -> Option<&Filtration> {
        self.per_ray.get(ray)
    }

    pub fn rays(&self) -> impl Iterator<Item = &String> {
        self.per_ray.keys()
    }

    pub fn per_ray(&self) -> &BTreeMap<String, Filtration> {
        &self.per_ray
    }
}

/// Decomposition of the ambient space into independent spanning pieces, each
/// tagged with one level per ray of the cone under consideration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    ambient: usize,
    pieces: Vec<(Vec<i64>, Subspace)>,
}

impl Grading {
    pub fn new(ambient: usize, pieces: Vec<(Vec<i64>, Subspace)>) -> Result<Self> {
        let tuple_len = pieces.first().map(|(t, _)| t.len());
        let mut total = 0;
        let mut span = Subspace::zero(ambient);
        for (i, (tuple, space)) in pieces.iter().enumerate() {
            if Some(tuple.len()) != tuple_len {
                return Err(Error::BadFiltration("grading tuples of unequal length".into()));
            }
            if space.ambient_dim() != ambient {
                return Err(Error::BadFiltration("grading piece in the wrong space".into()));
            }
            if space.is_zero() {
                return Err(Error::BadFiltration("grading stores a zero piece".into()));
            }
            if pieces[..i].iter().any(|(t, _)| t == tuple) {
                return Err(Error::BadFiltration(format!("duplicate grading tuple {tuple:?}")));
            }
            total += space.dim();
            span = span.sum(space)?;
        }
        if total != ambient || span.dim() != ambient {
            return Err(Error::BadFiltration(
                "grading pieces must be independent and span".into(),
            ));
        }
        Ok(Grading { ambient, pieces })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[(Vec<i64>, Subspace)] {
        &self.pieces
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KFailure {
    pub piece_dims: Vec<(Vec<i64>, usize)>,
    pub total: usize,
    pub ambient_dim: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KIndeterminate {
    pub piece_dims: Vec<(Vec<i64>, usize)>,
    pub detail: String,
}

/// Outcome of the compatible-grading search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KOutcome {
    Satisfied(Grading),
    Failed(KFailure),
    Indeterminate(KIndeterminate),
}

/// Search for a grading of the ambient space splitting every listed ray's
/// filtration simultaneously, by sweeping the grid of jump-level tuples from
/// the top of the product order downwards. Each candidate piece is the
/// deterministic complement of the already-granted part inside the level
/// intersection. A successful dimension count is never trusted on its own:
/// the candidate grading is re-verified, and a candidate that fails
/// re-verification is reported as indeterminate.
pub fn check_condition_k(mf: &MultiFiltration, cone_rays: &[String]) -> Result<KOutcome> {
    let n = mf.ambient_dim();
    let mut jumps = Vec::new();
    for (i, ray) in cone_rays.iter().enumerate() {
        if cone_rays[..i].contains(ray) {
            return Err(Error::BadFan(format!("duplicate ray `{ray}` in cone")));
        }
        let f = mf.get(ray).ok_or_else(|| Error::UnknownRay(ray.clone()))?;
        jumps.push(f.jump_levels());
    }
    if n == 0 {
        return Ok(KOutcome::Satisfied(Grading::new(0, Vec::new())?));
    }

    let mut tuples = vec![Vec::new()];
    for levels in &jumps {
        let mut next = Vec::new();
        for t in &tuples {
            for &l in levels {
                let mut t2 = t.clone();
                t2.push(l);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let key = |t: &Vec<i64>| (t.iter().map(|&x| x as i128).sum::<i128>(), t.clone());
    tuples.sort_by(|a, b| key(b).cmp(&key(a)));

    let mut level_space = BTreeMap::new();
    for t in &tuples {
        let mut u = Subspace::full(n);
        for (i, ray) in cone_rays.iter().enumerate() {
            u = u.intersect(&mf.get(ray).unwrap().value(t[i]))?;
        }
        level_space.insert(t.clone(), u);
    }

    let mut pieces: Vec<(Vec<i64>, Subspace)> = Vec::new();
    for t in &tuples {
        let u = &level_space[t];
        let mut granted = Subspace::zero(n);
        for (i, levels) in jumps.iter().enumerate() {
            let pos = levels.iter().position(|&l| l == t[i]).unwrap();
            if pos + 1 < levels.len() {
                let mut bumped = t.clone();
                bumped[i] = levels[pos + 1];
                granted = granted.sum(&level_space[&bumped])?;
            }
            // past the last jump the ray's space is zero: nothing to grant
        }
        let piece = granted.complement_within(u)?;
        if piece.dim() > 0 {
            pieces.push((t.clone(), piece));
        }
    }

    let piece_dims: Vec<(Vec<i64>, usize)> =
        pieces.iter().map(|(t, s)| (t.clone(), s.dim())).collect();
    let total: usize = piece_dims.iter().map(|(_, d)| d).sum();
    if total != n {
        return Ok(KOutcome::Failed(KFailure { piece_dims, total, ambient_dim: n }));
    }
    let grading = match Grading::new(n, pieces) {
        Ok(g) => g,
        Err(e) => {
            return Ok(KOutcome::Indeterminate(KIndeterminate {
                piece_dims,
                detail: format!("candidate pieces rejected: {e}"),
            }))
        }
    };
    if verify_grading(mf, cone_rays, &grading)? {
        Ok(KOutcome::Satisfied(grading))
    } else {
        Ok(KOutcome::Indeterminate(KIndeterminate {
            piece_dims,
            detail: "dimension count succeeded but the grading failed re-verification".into(),
        }))
    }
}

/// Does the grading reproduce every filtration level of every listed ray?
/// The space at level `l` along ray `i` must equal the sum of pieces whose
/// tuple is at least `l` in coordinate `i`.
pub fn verify_grading(mf: &MultiFiltration, cone_rays: &[String], g: &Grading) -> Result<bool> {
    for ray in cone_rays {
        if mf.get(ray).is_none() {
            return Err(Error::UnknownRay(ray.clone()));
        }
    }
    if g.ambient_dim() != mf.ambient_dim() {
        return Ok(false);
    }
    if let Some((tuple, _)) = g.pieces().first() {
        if tuple.len() != cone_rays.len() {
            return Ok(false);
        }
    } else if !cone_rays.is_empty() && mf.ambient_dim() > 0 {
        return Ok(false);
    }
    let n = mf.ambient_dim();
    for (i, ray) in cone_rays.iter().enumerate() {
        let f = mf.get(ray).unwrap();
        let mut levels: Vec<i64> = f.jump_levels();
        levels.extend(g.pieces().iter().map(|(t, _)| t[i]));
        levels.sort_unstable();
        levels.dedup();
        if let (Some(&lo), Some(&hi)) = (levels.first(), levels.last()) {
            levels.push(lo - 1);
            levels.push(hi + 1);
        }
        for l in levels {
            let mut got = Subspace::zero(n);
            for (t, s) in g.pieces() {
                if t[i] >= l {
                    got = got.sum(s)?;
                }
            }
            if got != f.value(l) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
