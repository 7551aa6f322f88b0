//! JSON wire types. Rationals travel as strings such as "3/4" or "-2";
//! matrices as row-major arrays of such strings; filtrations as step lists;
//! fans as ray tables plus maximal cones named by ray id.

use crate::error::{Error, Result};
use crate::fan::{Fan, Ray};
use crate::filtration::{Filtration, MultiFiltration};
use crate::linalg::{format_rational, parse_rational, Rational, RationalMatrix, Subspace};
use crate::spherical::LieFiltrationData;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepDto {
    pub level: i64,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiltrationDto {
    pub dim: usize,
    pub steps: Vec<StepDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RayDto {
    pub id: String,
    pub gen: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanDto {
    pub rank: usize,
    pub rays: Vec<RayDto>,
    pub maximal_cones: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieDto {
    pub dim: usize,
    pub action: Vec<Vec<Vec<String>>>,
    pub levels: BTreeMap<String, FiltrationDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDto {
    pub levels: Vec<i64>,
    pub basis: Vec<Vec<String>>,
}

pub fn parse_row(row: &[String]) -> Result<Vec<Rational>> {
    row.iter().map(|s| parse_rational(s)).collect()
}

/// Parse a row-major matrix; `cols` disambiguates the empty-row-list case.
pub fn parse_matrix(rows: &[Vec<String>], cols: usize) -> Result<RationalMatrix> {
    let parsed: Vec<Vec<Rational>> = rows.iter().map(|r| parse_row(r)).collect::<Result<_>>()?;
    RationalMatrix::from_rows_in(cols, parsed)
}

pub fn matrix_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

impl FiltrationDto {
    pub fn to_domain(&self) -> Result<Filtration> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let rows = s
                    .basis
                    .iter()
                    .map(|r| parse_row(r))
                    .collect::<Result<Vec<_>>>()?;
                Ok((s.level, Subspace::span(self.dim, &rows)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Filtration::new(self.dim, steps)
    }

    pub fn from_domain(f: &Filtration) -> Self {
        FiltrationDto {
            dim: f.ambient_dim(),
            steps: f
                .steps()
                .iter()
                .map(|(level, space)| StepDto {
                    level: *level,
                    basis: matrix_strings(space.basis()),
                })
                .collect(),
        }
    }
}

pub fn multi_filtration(
    dim: usize,
    filtrations: &BTreeMap<String, FiltrationDto>,
) -> Result<MultiFiltration> {
    let per_ray = filtrations
        .iter()
        .map(|(ray, dto)| Ok((ray.clone(), dto.to_domain()?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    MultiFiltration::new(dim, per_ray)
}

impl FanDto {
    pub fn to_domain(&self) -> Result<Fan> {
        let rays = self
            .rays
            .iter()
            .map(|r| Ray { id: r.id.clone(), generator: r.gen.clone() })
            .collect();
        Fan::new(self.rank, rays, self.maximal_cones.clone())
    }
}

impl LieDto {
    pub fn to_domain(&self, w_dim: usize) -> Result<LieFiltrationData> {
        let action = self
            .action
            .iter()
            .map(|m| parse_matrix(m, w_dim))
            .collect::<Result<Vec<_>>>()?;
        let brackets = match &self.brackets {
            None => None,
            Some(c) => {
                if c.len() != self.dim || c.iter().any(|r| r.len() != self.dim) {
                    return Err(Error::BadRep("structure constants must be dim x dim".into()));
                }
                Some(
                    c.iter()
                        .map(|row| row.iter().map(|v| parse_row(v)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        let levels = self
            .levels
            .iter()
            .map(|(ray, dto)| Ok((ray.clone(), dto.to_domain()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        LieFiltrationData::new(self.dim, action, brackets, levels)
    }
}
