//! Detected slopes and closed essential surfaces from integrality and ranks.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::IdealPresentation;
use crate::integrality::{
    coordinate_functions, is_integral, is_integral_peripheral, BaseKind, Dependence, PeripheralTraces,
};
use crate::modrank::{rank_c, rank_q, rank_z_bounds, RankValue};
use crate::poly::Poly;
use crate::tracecalc::{GroupWord, SlopeSpec, TraceRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedSurface {
    /// Every coordinate is integral over the peripheral subring.
    NotDetected { profile: Vec<(Poly, Dependence)> },
    /// `witness` is the offending leading coefficient; `None` when every
    /// peripheral trace is constant on the curve.
    Detected {
        coordinate: Poly,
        witness: Option<Poly>,
        profile: Vec<(Poly, Dependence)>,
    },
}

impl ClosedSurface {
    pub fn is_detected(&self) -> bool {
        matches!(self, ClosedSurface::Detected { .. })
    }

    pub fn profile(&self) -> &[(Poly, Dependence)] {
        match self {
            ClosedSurface::NotDetected { profile } | ClosedSurface::Detected { profile, .. } => profile,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlopeVerdict {
    NotDetected,
    StronglyDetected,
    /// The slope's trace is constant on the curve.
    ConstantTraceDetected,
}

impl fmt::Display for SlopeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlopeVerdict::NotDetected => "NOT_DETECTED",
            SlopeVerdict::StronglyDetected => "STRONGLY_DETECTED",
            SlopeVerdict::ConstantTraceDetected => "CONSTANT_TRACE_DETECTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeEntry {
    pub slope: SlopeSpec,
    pub trace: Poly,
    pub verdict: SlopeVerdict,
    /// Coordinate that fails to be integral, with the leading coefficient.
    pub witness: Option<(Poly, Poly)>,
    pub rank_c: Option<RankValue>,
    pub rank_q: Option<RankValue>,
    pub rank_z: Option<RankValue>,
}

impl SlopeEntry {
    fn ranks(&self) -> impl Iterator<Item = &RankValue> {
        [&self.rank_c, &self.rank_q, &self.rank_z].into_iter().flatten()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormCurveCheck {
    pub flag: bool,
    pub all_nonconstant: bool,
    pub min_finite_rank: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectOptions {
    pub ranks: bool,
    /// Off when the ideal's field of definition is undeclared.
    pub rational_ranks: bool,
    pub integer_ranks: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            ranks: true,
            rational_ranks: true,
            integer_ranks: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionReport {
    pub closed_surface: ClosedSurface,
    pub slopes: Vec<SlopeEntry>,
    pub norm_curve: NormCurveCheck,
}

/// Coprime `(p, q)` with `0 ≤ q ≤ bound`, `|p| ≤ bound`, up to sign, ordered
/// by height, then `q`, then `|p|`, positive first.
pub fn enumerate_slopes(bound: u32) -> Result<Vec<SlopeSpec>> {
    if bound == 0 {
        return Err(Error::Invalid("slope bound must be at least 1".into()));
    }
    let b = bound as i64;
    let mut out = Vec::new();
    for q in 0..=b {
        for p in -b..=b {
            if num_integer::gcd(p, q) != 1 || (q == 0 && p < 0) {
                continue;
            }
            out.push(SlopeSpec::new(p, q)?);
        }
    }
    out.sort_by_key(|s| (s.p().abs().max(s.q()), s.q(), s.p().abs(), s.p() < 0));
    Ok(out)
}

/// Trace of μ^p λ^q from the peripheral traces, via the identities in the free
/// group on μ, λ.
pub fn slope_trace(slope: &SlopeSpec, peripheral: &PeripheralTraces) -> Result<Poly> {
    let tr = TraceRing::with_names(&["m", "l"], &[("M", "m"), ("L", "l"), ("ML", "m l")])?;
    let w = GroupWord::from_powers(&[(0, slope.p()), (1, slope.q())]);
    let t = tr.trace(&w);
    let target = peripheral
        .present()
        .first()
        .map(|(_, p)| p.ring().clone())
        .ok_or_else(|| Error::MissingSection("peripheral".into()))?;
    let mut values = HashMap::new();
    for (name, p) in [("M", &peripheral.mu), ("L", &peripheral.lambda), ("ML", &peripheral.mulambda)] {
        let used = t.involves(tr.ring().var_index(name)?);
        match p {
            Some(p) => {
                values.insert(name.to_string(), p.to_ring(&target)?);
            }
            None if used => {
                let which = match name {
                    "M" => "mu",
                    "L" => "lambda",
                    _ => "mulambda",
                };
                return Err(Error::MissingSection(format!("peripheral {which} (needed for slope {slope})")));
            }
            None => {
                values.insert(name.to_string(), Poly::zero(&target));
            }
        }
    }
    t.substitute(&values, &target)
}

/// Integrality of every coordinate over the peripheral subring; stops at the
/// first failure.
pub fn closed_surface_verdict(
    ideal: &IdealPresentation,
    coordinates: &[Poly],
    peripheral: &PeripheralTraces,
) -> Result<ClosedSurface> {
    let mut profile = Vec::new();
    for c in coordinates {
        match is_integral_peripheral(ideal, c, peripheral) {
            Ok(d @ Dependence::Integral { .. }) => profile.push((c.clone(), d)),
            Ok(Dependence::NotIntegral { witness }) => {
                profile.push((c.clone(), Dependence::NotIntegral { witness: witness.clone() }));
                return Ok(ClosedSurface::Detected {
                    coordinate: c.clone(),
                    witness: Some(witness),
                    profile,
                });
            }
            Err(Error::ConstantBase) => {
                return Ok(ClosedSurface::Detected {
                    coordinate: c.clone(),
                    witness: None,
                    profile,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ClosedSurface::NotDetected { profile })
}

/// Verdict for one slope, with ranks over ℂ, ℚ (and optionally bounds over ℤ)
/// when it is not detected.
pub fn slope_verdict(
    ideal: &IdealPresentation,
    coordinates: &[Poly],
    slope: SlopeSpec,
    trace: &Poly,
    options: DetectOptions,
) -> Result<SlopeEntry> {
    let mut entry = SlopeEntry {
        slope,
        trace: trace.clone(),
        verdict: SlopeVerdict::NotDetected,
        witness: None,
        rank_c: None,
        rank_q: None,
        rank_z: None,
    };
    let mut infinite = None;
    for c in coordinates {
        match is_integral(ideal, c, trace, BaseKind::Field) {
            Ok(Dependence::Integral { .. }) => {}
            Ok(Dependence::NotIntegral { witness }) => {
                entry.verdict = SlopeVerdict::StronglyDetected;
                infinite = Some(RankValue::Infinite {
                    coordinate: c.clone(),
                    leading: witness.clone(),
                });
                entry.witness = Some((c.clone(), witness));
                break;
            }
            Err(Error::ConstantBase) => {
                entry.verdict = SlopeVerdict::ConstantTraceDetected;
                infinite = Some(RankValue::Infinite {
                    coordinate: c.clone(),
                    leading: trace.clone(),
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(inf) = infinite {
        entry.rank_c = Some(inf.clone());
        if options.rational_ranks {
            entry.rank_q = Some(inf.clone());
        }
        if options.integer_ranks {
            entry.rank_z = Some(inf);
        }
        return Ok(entry);
    }
    if options.ranks {
        entry.rank_c = Some(rank_c(ideal, trace, None)?.value);
        if options.rational_ranks {
            entry.rank_q = Some(rank_q(ideal, trace, None)?.value);
        }
        if options.integer_ranks {
            entry.rank_z = Some(rank_z_bounds(ideal, trace, None, None, None)?.value);
        }
    }
    Ok(entry)
}

/// Necessary conditions for a norm curve: every tested slope has nonconstant
/// trace and every finite rank is at least 2.
pub fn norm_curve_check(entries: &[SlopeEntry]) -> NormCurveCheck {
    let all_nonconstant = entries
        .iter()
        .all(|e| e.verdict != SlopeVerdict::ConstantTraceDetected);
    let min_finite_rank = entries
        .iter()
        .flat_map(|e| e.ranks())
        .filter_map(|r| match r {
            RankValue::Exact(n) => Some(*n),
            RankValue::Bounds { lower, .. } => Some(*lower),
            RankValue::Infinite { .. } => None,
        })
        .min();
    NormCurveCheck {
        flag: all_nonconstant && min_finite_rank.is_none_or(|n| n >= 2),
        all_nonconstant,
        min_finite_rank,
    }
}

/// Closed-surface verdict, then each slope in order. `coordinates` defaults to
/// the ring variables.
pub fn detect(
    ideal: &IdealPresentation,
    coordinates: Option<&[Poly]>,
    peripheral: &PeripheralTraces,
    slopes: &[(SlopeSpec, Poly)],
    options: DetectOptions,
) -> Result<DetectionReport> {
    let coords: Vec<Poly> = match coordinates {
        Some(c) => c.to_vec(),
        None => coordinate_functions(ideal),
    };
    let closed_surface = closed_surface_verdict(ideal, &coords, peripheral)?;
    let slopes = slopes
        .iter()
        .map(|(s, t)| slope_verdict(ideal, &coords, *s, t, options))
        .collect::<Result<Vec<_>>>()?;
    let report = DetectionReport {
        norm_curve: norm_curve_check(&slopes),
        closed_surface,
        slopes,
    };
    report.check_consistency()?;
    Ok(report)
}

impl DetectionReport {
    /// A detected closed surface forces every rank to be infinite, and a
    /// finite rank rules it out.
    pub fn check_consistency(&self) -> Result<()> {
        let finite = self
            .slopes
            .iter()
            .flat_map(|e| e.ranks())
            .any(|r| !matches!(r, RankValue::Infinite { .. }));
        let undetected = self.slopes.iter().any(|e| e.verdict == SlopeVerdict::NotDetected);
        if self.closed_surface.is_detected() && (finite || undetected) {
            return Err(Error::verification(
                "report",
                "closed surface detected but some slope has finite rank",
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let dep = |(c, d): &(Poly, Dependence)| match d {
            Dependence::Integral { relation, degree } => json!({
                "coordinate": c.to_string(),
                "status": "INTEGRAL",
                "degree": degree,
                "relation": relation.to_string(),
            }),
            Dependence::NotIntegral { witness } => json!({
                "coordinate": c.to_string(),
                "status": "NOT_INTEGRAL",
                "witness": witness.to_string(),
            }),
        };
        let closed = match &self.closed_surface {
            ClosedSurface::NotDetected { profile } => json!({
                "verdict": "NOT_DETECTED",
                "profile": profile.iter().map(dep).collect::<Vec<_>>(),
            }),
            ClosedSurface::Detected { coordinate, witness, profile } => json!({
                "verdict": "DETECTED",
                "coordinate": coordinate.to_string(),
                "witness": witness.as_ref().map_or(Value::Null, |w| Value::String(w.to_string())),
                "profile": profile.iter().map(dep).collect::<Vec<_>>(),
            }),
        };
        let rank = |r: &Option<RankValue>| r.as_ref().map_or(Value::Null, |r| Value::String(r.to_string()));
        let slopes: Vec<Value> = self
            .slopes
            .iter()
            .map(|e| {
                json!({
                    "slope": [e.slope.p(), e.slope.q()],
                    "trace": e.trace.to_string(),
                    "verdict": e.verdict.to_string(),
                    "witness": e.witness.as_ref().map_or(Value::Null, |(c, w)| json!({
                        "coordinate": c.to_string(),
                        "leading": w.to_string(),
                    })),
                    "rank_c": rank(&e.rank_c),
                    "rank_q": rank(&e.rank_q),
                    "rank_z": rank(&e.rank_z),
                })
            })
            .collect();
        json!({
            "closed_surface": closed,
            "slopes": slopes,
            "norm_curve": {
                "flag": self.norm_curve.flag,
                "all_nonconstant": self.norm_curve.all_nonconstant,
                "min_finite_rank": self.norm_curve.min_finite_rank,
            },
            "scope": "slope verdicts cover the tested slopes only; the closed-surface verdict concerns surfaces detected by this curve",
        })
    }
}

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.closed_surface {
            ClosedSurface::NotDetected { .. } => writeln!(f, "closed surface: NOT_DETECTED")?,
            ClosedSurface::Detected { coordinate, witness, .. } => match witness {
                Some(w) => writeln!(f, "closed surface: DETECTED ({coordinate} not integral, leading coefficient {w})")?,
                None => writeln!(f, "closed surface: DETECTED (peripheral traces constant)")?,
            },
        }
        for (c, d) in self.closed_surface.profile() {
            writeln!(f, "  {c}: {d}")?;
        }
        for e in &self.slopes {
            write!(f, "slope {}/{}: {}", e.slope.p(), e.slope.q(), e.verdict)?;
            if let Some((c, w)) = &e.witness {
                write!(f, " ({c} not integral, leading coefficient {w})")?;
            }
            let r = |r: &Option<RankValue>| r.as_ref().map_or("-".to_string(), |r| r.to_string());
            writeln!(f, "; rank C {} Q {} Z {}", r(&e.rank_c), r(&e.rank_q), r(&e.rank_z))?;
        }
        write!(f, "norm curve: {}", if self.norm_curve.flag { "possible" } else { "no" })?;
        if let Some(m) = self.norm_curve.min_finite_rank {
            write!(f, " (minimum finite rank {m})")?;
        }
        writeln!(f)
    }
}

#[cfg(test)]
mod tests;
