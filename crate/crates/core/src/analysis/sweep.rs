use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::locality::{locality_profile, LocalityProfile};
use crate::catalog::{NamedCode, NamedCss};
use crate::codes::{ClassicalCode, CssCode, Distance, Limits, SoundnessInterval};
use crate::constructions::{cp_standard_ltc, duplicate_css, random_nested_css};
use crate::homology::{distance_balanced_css, gauge_fixed_duplicate, RepetitionVariant};
use crate::{Error, Result};

/// Code families a sweep can range over, with their grid keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `h`: `css([H,H],[H,H])`.
    Duplicate,
    /// `h`: `css([H,H],[I,I])`.
    Gauge,
    /// `h`, `ell`, `variant` (default `star`).
    Balanced,
    /// `n`, `seed`.
    Nested,
    /// `q`, `c`: the standard-form check product.
    CheckProduct,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Duplicate => "duplicate",
            Family::Gauge => "gauge",
            Family::Balanced => "balanced",
            Family::Nested => "nested",
            Family::CheckProduct => "check-product",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Family::Duplicate | Family::Gauge => &["h"],
            Family::Balanced => &["h", "ell", "variant"],
            Family::Nested => &["n", "seed"],
            Family::CheckProduct => &["q", "c"],
        }
    }

    fn default_for(self, key: &str) -> Option<&'static str> {
        match (self, key) {
            (Family::Balanced, "variant") => Some("star"),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "duplicate" => Ok(Family::Duplicate),
            "gauge" => Ok(Family::Gauge),
            "balanced" => Ok(Family::Balanced),
            "nested" => Ok(Family::Nested),
            "check-product" => Ok(Family::CheckProduct),
            other => Err(Error::BadParameter(format!("unknown family {other:?}"))),
        }
    }
}

/// `key=v1,v2;key2=w1` parsed into ordered value lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Grid {
    axes: BTreeMap<String, Vec<String>>,
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut axes = BTreeMap::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, values) = part
                .split_once('=')
                .ok_or_else(|| Error::BadParameter(format!("grid axis {part:?} lacks '='")))?;
            let values: Vec<String> = values
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(String::from)
                .collect();
            if axes.insert(key.trim().to_string(), values).is_some() {
                return Err(Error::BadParameter(format!("grid axis {key:?} repeated")));
            }
        }
        Ok(Grid { axes })
    }
}

impl Grid {
    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    /// Cartesian product over the family's keys, last key varying fastest.
    fn cells(&self, family: Family) -> Result<Vec<Vec<String>>> {
        if self.axes.is_empty() {
            return Ok(Vec::new());
        }
        if let Some(extra) = self.axes.keys().find(|k| !family.keys().contains(&k.as_str())) {
            return Err(Error::BadParameter(format!("{family} has no grid key {extra:?}")));
        }
        let mut cells = alloc::vec![Vec::new()];
        for &key in family.keys() {
            let values: Vec<String> = match (self.axes.get(key), family.default_for(key)) {
                (Some(v), _) => v.clone(),
                (None, Some(d)) => alloc::vec![d.to_string()],
                (None, None) => {
                    return Err(Error::BadParameter(format!("{family} needs grid key {key:?}")))
                }
            };
            cells = cells
                .into_iter()
                .flat_map(|prefix: Vec<String>| {
                    values.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v.clone());
                        next
                    })
                })
                .collect();
        }
        Ok(cells)
    }
}

/// One sweep cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCell {
    pub family: Family,
    /// `key=value` pairs joined by `;`.
    pub params: String,
    values: Vec<String>,
}

/// Measured parameters of one code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub d_x: Distance,
    pub d_z: Distance,
    /// `None` when exhaustive soundness is out of range or undefined.
    pub soundness: Option<SoundnessInterval>,
    pub x_locality: LocalityProfile,
    pub z_locality: LocalityProfile,
}

impl CodeReport {
    pub fn measure(code: &CssCode, limits: &Limits) -> Result<Self> {
        let (d_x, d_z) = code.distances(limits)?;
        let soundness = match code.soundness_interval(limits) {
            Ok(s) => Some(s),
            Err(Error::TooLarge { .. } | Error::TrivialCode) => None,
            Err(e) => return Err(e),
        };
        Ok(CodeReport {
            n: code.n(),
            k: code.dimension(),
            d_x,
            d_z,
            soundness,
            x_locality: locality_profile(code.h_x()),
            z_locality: locality_profile(code.h_z()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepOutcome {
    Measured(Box<CodeReport>),
    /// The cell could not be built or measured; the reason is kept.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub cell: SweepCell,
    pub outcome: SweepOutcome,
}

/// Expands `grid` for `family`. An empty grid gives no cells.
pub fn sweep_cells(family: Family, grid: &Grid) -> Result<Vec<SweepCell>> {
    Ok(grid
        .cells(family)?
        .into_iter()
        .map(|values| {
            let params = family
                .keys()
                .iter()
                .zip(&values)
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            SweepCell {
                family,
                params,
                values,
            }
        })
        .collect())
}

impl SweepCell {
    /// Builds the cell's code.
    pub fn build(&self, limits: &Limits) -> Result<CssCode> {
        let v = &self.values;
        let number = |s: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::BadParameter(format!("expected a number, got {s:?}")))
        };
        match self.family {
            Family::Duplicate => Ok(duplicate_css(&v[0].parse::<NamedCode>()?.checks()?)),
            Family::Gauge => Ok(gauge_fixed_duplicate(&v[0].parse::<NamedCode>()?.checks()?)),
            Family::Balanced => distance_balanced_css(
                &v[0].parse::<NamedCode>()?.checks()?,
                number(&v[1])? as usize,
                v[2].parse::<RepetitionVariant>()?,
            ),
            Family::Nested => random_nested_css(number(&v[0])? as usize, number(&v[1])?),
            Family::CheckProduct => {
                let q = v[0].parse::<NamedCss>()?.code()?;
                let c = ClassicalCode::new(v[1].parse::<NamedCode>()?.checks()?);
                Ok(cp_standard_ltc(&q, &c, limits)?.code)
            }
        }
    }

    /// Builds and measures the cell; any error becomes a skipped row.
    pub fn run(&self, limits: &Limits) -> SweepRow {
        let outcome = match self.build(limits).and_then(|code| CodeReport::measure(&code, limits)) {
            Ok(report) => SweepOutcome::Measured(Box::new(report)),
            Err(e) => SweepOutcome::Skipped(e.to_string()),
        };
        SweepRow {
            cell: self.clone(),
            outcome,
        }
    }
}

/// Runs every cell sequentially.
pub fn sweep(family: Family, grid: &Grid, limits: &Limits) -> Result<Vec<SweepRow>> {
    Ok(sweep_cells(family, grid)?.iter().map(|c| c.run(limits)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn measured(row: &SweepRow) -> &CodeReport {
        match &row.outcome {
            SweepOutcome::Measured(r) => r,
            SweepOutcome::Skipped(why) => panic!("skipped: {why}"),
        }
    }

    #[test]
    fn balanced_sweep_over_ell() {
        let grid: Grid = "h=rep3;ell=2,3,4".parse().unwrap();
        let rows = sweep(Family::Balanced, &grid, &Limits::default()).unwrap();
        assert_eq!(rows.len(), 3);
        for (row, ell) in rows.iter().zip(2..) {
            let r = measured(row);
            assert_eq!(r.k, 1);
            assert_eq!(r.d_x, Distance::Finite(2 * ell));
            assert_eq!(row.cell.params, format!("h=rep3;ell={ell};variant=star"));
        }
    }

    #[test]
    fn duplicate_sweep() {
        let grid: Grid = "h=rep3,rep5,hamming7".parse().unwrap();
        for row in sweep(Family::Duplicate, &grid, &Limits::default()).unwrap() {
            let r = measured(&row);
            assert_eq!(r.d_x.min(r.d_z), Distance::Finite(2));
        }
    }

    #[test]
    fn empty_grid_and_bad_keys() {
        let empty: Grid = "".parse().unwrap();
        assert!(sweep(Family::Gauge, &empty, &Limits::default()).unwrap().is_empty());
        let bad: Grid = "h=rep3;x=1".parse().unwrap();
        assert!(sweep(Family::Gauge, &bad, &Limits::default()).is_err());
        let missing: Grid = "ell=2".parse().unwrap();
        assert!(sweep(Family::Balanced, &missing, &Limits::default()).is_err());
    }

    #[test]
    fn infeasible_cells_are_skipped() {
        let grid: Grid = "h=rep3,nonsense".parse().unwrap();
        let rows = sweep(Family::Gauge, &grid, &Limits::default()).unwrap();
        assert!(matches!(rows[0].outcome, SweepOutcome::Measured(_)));
        assert!(matches!(rows[1].outcome, SweepOutcome::Skipped(_)));
        let rows = sweep(Family::Gauge, &"h=hamming7".parse().unwrap(), &Limits { cap: 2 }).unwrap();
        assert!(matches!(rows[0].outcome, SweepOutcome::Skipped(_)));
    }
}
