//! Critical-line zeros by sign changes of Z(t), ingestion of published
//! ordinate tables, the multiplicity statistics N_j(T), and the Fujii
//! envelope evaluator.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::argument;
use crate::error::{Result, ZmlError};
use crate::zeta::hardy_z;

/// Where a zero record came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSource {
    Computed,
    Ingested,
    Synthetic,
}

/// An ordinate with its assumed multiplicity.
///
/// All computed and ingested records carry multiplicity 1: every known
/// zero is simple, and numerics alone cannot distinguish a double zero
/// from a close pair. Synthetic records may carry higher multiplicities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZeroRecord {
    pub ordinate: f64,
    pub index: usize,
    pub multiplicity: u32,
    pub source: ZeroSource,
}

/// A sorted zero table with the height up to which it is complete.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroTable {
    pub records: Vec<ZeroRecord>,
    pub height_covered: f64,
}

impl ZeroTable {
    pub fn empty() -> Self {
        ZeroTable {
            records: Vec::new(),
            height_covered: 0.0,
        }
    }

    /// Builds a synthetic table from (ordinate, multiplicity) pairs.
    pub fn synthetic(entries: &[(f64, u32)]) -> Result<Self> {
        let mut records = Vec::with_capacity(entries.len());
        for (i, &(g, m)) in entries.iter().enumerate() {
            if i > 0 && g <= entries[i - 1].0 {
                return Err(ZmlError::NonMonotonic { line: i + 1 });
            }
            records.push(ZeroRecord {
                ordinate: g,
                index: i + 1,
                multiplicity: m,
                source: ZeroSource::Synthetic,
            });
        }
        let height = records.last().map_or(0.0, |r| r.ordinate);
        Ok(ZeroTable {
            records,
            height_covered: height,
        })
    }

    /// Number of records with ordinate <= t (distinct zeros).
    pub fn count_below(&self, t: f64) -> usize {
        self.records.partition_point(|r| r.ordinate <= t)
    }

    /// Zero count below t with multiplicity.
    pub fn count_below_with_multiplicity(&self, t: f64) -> u64 {
        self.records[..self.count_below(t)]
            .iter()
            .map(|r| r.multiplicity as u64)
            .sum()
    }

    /// CSV serialization with the stable header "index,ordinate,multiplicity".
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,ordinate,multiplicity\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{}\n", r.index, r.ordinate, r.multiplicity));
        }
        out
    }
}

/// Scan-grid spacing at height t: 0.2 / log t, density-aware.
fn grid_spacing(t: f64, refine: f64) -> f64 {
    0.2 / t.max(3.0).ln() / refine
}

/// Counts sign changes of Z on [t_lo, t_hi] on the density-aware grid.
/// Chunked and processed concurrently; the merge keeps input order.
pub fn census_sign_changes(t_lo: f64, t_hi: f64, eval_tol: f64) -> Result<usize> {
    census_with_refinement(t_lo, t_hi, eval_tol, 1.0).map(|br| br.len())
}

/// Sign-change brackets (t_left, t_right) of Z on the scan grid.
fn census_with_refinement(
    t_lo: f64,
    t_hi: f64,
    eval_tol: f64,
    refine: f64,
) -> Result<Vec<(f64, f64)>> {
    let lo = t_lo.max(2.0);
    if t_hi <= lo {
        return Ok(Vec::new());
    }
    let chunk_len = 50.0;
    let n_chunks = ((t_hi - lo) / chunk_len).ceil() as usize;
    let chunks: Vec<(f64, f64)> = (0..n_chunks)
        .map(|i| {
            let a = lo + i as f64 * chunk_len;
            (a, (a + chunk_len).min(t_hi))
        })
        .collect();
    let per_chunk: Vec<Result<Vec<(f64, f64)>>> = chunks
        .par_iter()
        .map(|&(a, b)| {
            let mut brackets = Vec::new();
            let mut t = a;
            let mut prev = hardy_z(t, eval_tol)?.value;
            while t < b {
                let h = grid_spacing(t, refine);
                let next_t = (t + h).min(b);
                let cur = hardy_z(next_t, eval_tol)?.value;
                if prev.signum() != cur.signum() {
                    brackets.push((t, next_t));
                }
                t = next_t;
                prev = cur;
            }
            Ok(brackets)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_chunk {
        all.extend(r?);
    }
    Ok(all)
}

fn bisect_zero(mut lo: f64, mut hi: f64, tol: f64, eval_tol: f64) -> Result<f64> {
    let mut f_lo = hardy_z(lo, eval_tol)?.value;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = hardy_z(mid, eval_tol)?.value;
        if f_lo.signum() != f_mid.signum() {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates zeros of Z on [t_lo, t_hi], each refined by bisection to width
/// <= tol, and reconciles the count against the Riemann-von Mangoldt
/// formula. On mismatch the grid is refined 4x once before giving up.
pub fn find_zeros(t_lo: f64, t_hi: f64, tol: f64) -> Result<ZeroTable> {
    if !(2.0 <= t_lo && t_lo < t_hi && t_hi <= 1.0e6) {
        return Err(ZmlError::DomainExceeded {
            what: format!("find_zeros range [{t_lo}, {t_hi}]"),
        });
    }
    let eval_tol = (tol / 10.0).clamp(1e-12, 1e-6);

    let expected = expected_count(t_lo, t_hi)?;
    let mut brackets = census_with_refinement(t_lo, t_hi, eval_tol, 1.0)?;
    if brackets.len() != expected {
        brackets = census_with_refinement(t_lo, t_hi, eval_tol, 4.0)?;
        if brackets.len() != expected {
            return Err(ZmlError::MissedZeroSuspected {
                lo: t_lo,
                hi: t_hi,
                census: brackets.len(),
                formula: expected as f64,
            });
        }
    }

    let ordinates: Vec<Result<f64>> = brackets
        .par_iter()
        .map(|&(a, b)| bisect_zero(a, b, tol, eval_tol))
        .collect();
    let mut records = Vec::with_capacity(ordinates.len());
    let base_index = count_upto(t_lo)?;
    for (i, o) in ordinates.into_iter().enumerate() {
        records.push(ZeroRecord {
            ordinate: o?,
            index: base_index + i + 1,
            multiplicity: 1,
            source: ZeroSource::Computed,
        });
    }
    for pair in records.windows(2) {
        debug_assert!(pair[0].ordinate < pair[1].ordinate);
    }
    Ok(ZeroTable {
        records,
        height_covered: t_hi,
    })
}

fn count_upto(t: f64) -> Result<usize> {
    if t <= 14.0 {
        return Ok(0);
    }
    let smooth = argument::smooth_term(t)?;
    let s = argument::s_of_t_perturbed(t, 1e-8)?.s_value;
    Ok((smooth + s).round().max(0.0) as usize)
}

fn expected_count(t_lo: f64, t_hi: f64) -> Result<usize> {
    Ok(count_upto(t_hi)? - count_upto(t_lo)?)
}

/// Reads a zero table: ASCII, one decimal ordinate per line, '#' comments
/// ignored, strictly increasing.
pub fn load_zero_table(path: &Path) -> Result<ZeroTable> {
    let file = std::fs::File::open(path)?;
    parse_zero_table(BufReader::new(file))
}

/// Parses the one-ordinate-per-line format from any reader.
pub fn parse_zero_table<R: BufRead>(reader: R) -> Result<ZeroTable> {
    let mut records: Vec<ZeroRecord> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ordinate: f64 = trimmed.parse().map_err(|e| ZmlError::ParseError {
            line: lineno + 1,
            msg: format!("{e}: {trimmed:?}"),
        })?;
        if !ordinate.is_finite() || ordinate <= 0.0 {
            return Err(ZmlError::ParseError {
                line: lineno + 1,
                msg: format!("ordinate must be finite and positive, got {ordinate}"),
            });
        }
        if let Some(last) = records.last() {
            if ordinate <= last.ordinate {
                return Err(ZmlError::NonMonotonic { line: lineno + 1 });
            }
        }
        records.push(ZeroRecord {
            ordinate,
            index: records.len() + 1,
            multiplicity: 1,
            source: ZeroSource::Ingested,
        });
    }
    let height = records.last().map_or(0.0, |r| r.ordinate);
    Ok(ZeroTable {
        records,
        height_covered: height,
    })
}

/// N_j(T): distinct-zero counts keyed by multiplicity j, so that
/// sum_j N_j(T) equals the record count N(T) exactly.
pub fn nj_statistics(table: &ZeroTable, t: f64) -> Result<BTreeMap<u32, usize>> {
    if t > table.height_covered {
        return Err(ZmlError::HeightExceeded {
            t,
            height: table.height_covered,
        });
    }
    let mut map = BTreeMap::new();
    for r in &table.records[..table.count_below(t)] {
        *map.entry(r.multiplicity).or_insert(0) += 1;
    }
    Ok(map)
}

/// Which decay shape the Fujii envelope uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FujiiVariant {
    /// C1 N(T) exp(-C2 sqrt(j))
    Sqrt,
    /// C1 N(T) exp(-C2 j)
    Linear,
}

/// The Fujii envelope C1 * N(T) * exp(-C2 sqrt(j)) (or -C2 j). The
/// constants are caller-supplied parameters; no published values are
/// asserted.
pub fn fujii_envelope(j: u32, t: f64, c1: f64, c2: f64, variant: FujiiVariant) -> Result<f64> {
    if j < 1 {
        return Err(ZmlError::DomainViolation("fujii_envelope requires j >= 1".into()));
    }
    if t < 14.0 {
        return Err(ZmlError::DomainViolation(format!(
            "fujii_envelope requires T >= 14, got {t}"
        )));
    }
    if !(c1 > 0.0) || c2 < 0.0 {
        return Err(ZmlError::DomainViolation(
            "fujii_envelope requires C1 > 0, C2 >= 0".into(),
        ));
    }
    let n_t = argument::n_of_t(t)?.n_count as f64;
    let decay = match variant {
        FujiiVariant::Sqrt => (-c2 * (j as f64).sqrt()).exp(),
        FujiiVariant::Linear => (-c2 * j as f64).exp(),
    };
    Ok(c1 * n_t * decay)
}

/// The window inequality m(beta + i gamma) <= N(gamma+H) - N(gamma-H),
/// evaluated as the (multiplicity-weighted) zero count in the window.
pub fn multiplicity_window_bound(gamma: f64, h: f64, table: &ZeroTable) -> Result<u64> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(ZmlError::DomainViolation(format!(
            "window half-width H must be in (0, 1], got {h}"
        )));
    }
    if gamma + h > table.height_covered {
        return Err(ZmlError::HeightExceeded {
            t: gamma + h,
            height: table.height_covered,
        });
    }
    Ok(table.count_below_with_multiplicity(gamma + h)
        - table.count_below_with_multiplicity(gamma - h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    const GAMMA_1: f64 = 14.134_725_141_734_694;

    #[test]
    fn one_zero_in_10_15() {
        let table = find_zeros(10.0, 15.0, 1e-9).unwrap();
        assert_eq!(table.records.len(), 1);
        assert!((table.records[0].ordinate - GAMMA_1).abs() < 1e-9);
        assert_eq!(table.records[0].index, 1);
    }

    #[test]
    fn empty_below_first_zero() {
        let table = find_zeros(2.0, 14.0, 1e-8).unwrap();
        assert!(table.records.is_empty());
    }

    #[test]
    fn twentynine_zeros_below_100() {
        let table = find_zeros(10.0, 100.0, 1e-8).unwrap();
        assert_eq!(table.records.len(), 29);
    }

    #[test]
    fn parse_basic_table() {
        let t = parse_zero_table(Cursor::new("14.134725\n21.022040\n25.010858\n")).unwrap();
        assert_eq!(t.records.len(), 3);
        assert_eq!(t.records[2].index, 3);
        assert!(t.records.iter().all(|r| r.multiplicity == 1));
        assert_eq!(t.height_covered, 25.010858);
    }

    #[test]
    fn parse_empty_and_comments() {
        let t = parse_zero_table(Cursor::new("# header\n\n")).unwrap();
        assert!(t.records.is_empty());
        assert_eq!(t.height_covered, 0.0);
    }

    #[test]
    fn parse_rejects_out_of_order() {
        let r = parse_zero_table(Cursor::new("21.0\n14.1\n"));
        assert!(matches!(r, Err(ZmlError::NonMonotonic { line: 2 })));
    }

    #[test]
    fn parse_reports_line_number() {
        let r = parse_zero_table(Cursor::new("14.1\nnot-a-number\n"));
        assert!(matches!(r, Err(ZmlError::ParseError { line: 2, .. })));
    }

    #[test]
    fn nj_statistics_all_simple() {
        let table = find_zeros(10.0, 100.0, 1e-8).unwrap();
        let stats = nj_statistics(&table, 100.0).unwrap();
        assert_eq!(stats.get(&1), Some(&29));
        assert_eq!(stats.len(), 1);
        let empty = nj_statistics(&table, 10.0).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn nj_statistics_synthetic_double_zero() {
        let table = ZeroTable::synthetic(&[(14.1, 1), (21.0, 2), (25.0, 1)]).unwrap();
        let stats = nj_statistics(&table, 25.0).unwrap();
        assert_eq!(stats.get(&1), Some(&2));
        assert_eq!(stats.get(&2), Some(&1));
        // identity (1.4) as record counts
        let total: usize = stats.values().sum();
        assert_eq!(total, table.count_below(25.0));
    }

    #[test]
    fn height_guard() {
        let table = ZeroTable::synthetic(&[(14.1, 1)]).unwrap();
        assert!(matches!(
            nj_statistics(&table, 99.0),
            Err(ZmlError::HeightExceeded { .. })
        ));
    }

    #[test]
    fn fujii_envelope_degenerate_and_monotone() {
        let n100 = argument::n_of_t(100.0).unwrap().n_count as f64;
        let v = fujii_envelope(3, 100.0, 1.0, 0.0, FujiiVariant::Sqrt).unwrap();
        assert_eq!(v, n100);
        let a = fujii_envelope(1, 100.0, 1.0, 0.5, FujiiVariant::Sqrt).unwrap();
        let b = fujii_envelope(2, 100.0, 1.0, 0.5, FujiiVariant::Sqrt).unwrap();
        let c = fujii_envelope(4, 100.0, 1.0, 0.5, FujiiVariant::Sqrt).unwrap();
        assert!(a > b && b > c);
        assert!(fujii_envelope(0, 100.0, 1.0, 0.5, FujiiVariant::Sqrt).is_err());
    }

    #[test]
    fn window_bound_lookups() {
        let table = find_zeros(10.0, 30.0, 1e-8).unwrap();
        assert_eq!(multiplicity_window_bound(GAMMA_1, 0.5, &table).unwrap(), 1);
        assert_eq!(multiplicity_window_bound(GAMMA_1, 1.0, &table).unwrap(), 1);
        assert_eq!(multiplicity_window_bound(22.0, 1.0, &table).unwrap(), 1);
        // monotone in H
        let narrow = multiplicity_window_bound(GAMMA_1, 0.1, &table).unwrap();
        let wide = multiplicity_window_bound(GAMMA_1, 1.0, &table).unwrap();
        assert!(narrow <= wide);
    }

    #[test]
    fn csv_header() {
        let table = ZeroTable::synthetic(&[(14.1, 1)]).unwrap();
        assert!(table.to_csv().starts_with("index,ordinate,multiplicity\n"));
    }
}
