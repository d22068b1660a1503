//! Skip numbers and vertex ratios of closed geodesics as the side count
//! grows.
//!
//! Formulas here assume unit side length. Limits of vertex ratios are exact
//! rationals.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minind::{analytic_bounds, minimizing_index, vshape_bound, DEFAULT_REL_TOL};
use crate::spectra::canonical_skips;
use crate::surface::{DiskSurface, PolygonSurface};
use crate::tracer::{make_disk_geodesic, make_special, skip_numbers, GeodesicPath, SpecialKind};

pub type Q = Ratio<i64>;

/// `S_j = Σ_{k ≤ j} (−1)^{k+1} s_k`.
pub fn alternating_partials(skips: &[i64]) -> Vec<i64> {
    skips
        .iter()
        .enumerate()
        .scan(0i64, |acc, (k, s)| {
            *acc += if k % 2 == 0 { *s } else { -*s };
            Some(*acc)
        })
        .collect()
}

/// Start angle of the closed geodesic on `X_p` with the given skips:
/// the argument of `Σ (−1)^{i+1} e^{2πi S_i / p}` plus `π/2`, reduced into
/// `(0, π)`.
pub fn development_angle(p: usize, skips: &[i64]) -> Result<f64> {
    let partials = alternating_partials(skips);
    let (mut x, mut y) = (0.0, 0.0);
    for (i, s) in partials.iter().enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let phi = 2.0 * PI * *s as f64 / p as f64;
        x += sign * phi.cos();
        y += sign * phi.sin();
    }
    if x.hypot(y) < 1e-12 * skips.len().max(1) as f64 {
        return Err(Error::Numerical("development resultant vanishes".into()));
    }
    let theta = (y.atan2(x) + PI / 2.0).rem_euclid(PI);
    if theta <= 0.0 {
        return Err(Error::Numerical("development angle is degenerate".into()));
    }
    Ok(theta)
}

/// One step of the vertex-ratio recurrence on `X_p` at unit side:
/// `v' = csc(2sπ/p − θ)·((1 − v) sin θ − [cos(θ − π/p) − cos((2s−1)π/p − θ)] / (2 sin(π/p)))`.
///
/// The cosine difference is evaluated as a product of sines, which keeps
/// symmetric configurations exact.
pub fn vertex_ratio_step(p: usize, v: f64, s: usize, theta: f64) -> Result<f64> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::EdgeParameter(v));
    }
    let pf = p as f64;
    let x = PI / pf;
    let s_angle = PI * (s as f64 / pf);
    // cos A − cos B with A + B = 2(s−1)π/p and A − B = 2(θ − sπ/p)
    let bracket = -2.0 * (PI * ((s as f64 - 1.0) / pf)).sin() * (theta - s_angle).sin();
    let out = ((1.0 - v) * theta.sin() - bracket / (2.0 * x.sin())) / (PI * (2.0 * s as f64 / pf) - theta).sin();
    if !(out > 0.0 && out < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "(v={v}, s={s}, θ={theta}) does not reach the claimed edge (v'={out})"
        )));
    }
    Ok(out)
}

/// Angle at the next hit: `θ' = 2πs/p − θ`.
pub fn next_angle(p: usize, s: usize, theta: f64) -> f64 {
    PI * (2.0 * s as f64 / p as f64) - theta
}

/// Iterate the recurrence along a skip sequence, returning every ratio
/// starting with `v0`.
pub fn iterate_vertex_ratios(p: usize, v0: f64, theta0: f64, skips: &[usize]) -> Result<Vec<f64>> {
    let mut out = vec![v0];
    let (mut v, mut theta) = (v0, theta0);
    for &s in skips {
        v = vertex_ratio_step(p, v, s, theta)?;
        theta = next_angle(p, s, theta);
        out.push(v);
    }
    Ok(out)
}

/// Skip sequences `s_i(p) = (p + k_i)/d` with `d = n/l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipFamily {
    /// Period.
    pub n: usize,
    /// Winding: `d = n / l`.
    pub l: i64,
    pub k: Vec<i64>,
}

impl SkipFamily {
    pub fn new(n: usize, l: i64, k: Vec<i64>) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidArgument(format!("family period must be even, got {n}")));
        }
        if k.len() != n {
            return Err(Error::InvalidArgument(format!("need {n} deviations, got {}", k.len())));
        }
        if l <= 0 {
            return Err(Error::InvalidArgument("winding l must be positive".into()));
        }
        if k.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidArgument("deviations must sum to zero".into()));
        }
        let family = SkipFamily { n, l, k };
        // some p must make every (p + k_i)/d integral
        let step = n as i64 / (n as i64).gcd(&l);
        if family.k.iter().any(|ki| (ki - family.k[0]) % step != 0) {
            return Err(Error::InvalidArgument(format!(
                "deviations must agree modulo {step}, otherwise no side count instantiates the family"
            )));
        }
        for i in 0..n {
            let diff = (family.k[i] - family.k[(i + 1) % n]).abs();
            if Q::from(diff) > family.d() {
                return Err(Error::InvalidArgument(format!(
                    "|k_{} − k_{}| = {diff} exceeds d = {}",
                    i + 1,
                    (i + 1) % n + 1,
                    family.d()
                )));
            }
        }
        Ok(family)
    }

    /// The V-shape family: period 4, `d = 2`, `k = (−1, 1, 1, −1)`.
    pub fn vshape() -> Self {
        SkipFamily {
            n: 4,
            l: 2,
            k: vec![-1, 1, 1, -1],
        }
    }

    pub fn d(&self) -> Q {
        Q::new(self.n as i64, self.l)
    }

    pub fn is_palindromic(&self) -> bool {
        self.k.iter().eq(self.k.iter().rev())
    }

    /// Whether infinitely many primes `p` instantiate the family. Admissible
    /// `p` form one residue class modulo `n / gcd(n, l)`, which holds
    /// infinitely many primes exactly when it is coprime to the modulus.
    pub fn admits_primes(&self) -> bool {
        let modulus = self.n as i64 / (self.n as i64).gcd(&self.l);
        (-self.k[0]).rem_euclid(modulus).gcd(&modulus) == 1
    }

    /// Skips on `X_p`, or `None` when some `(p + k_i)/d` is not a positive
    /// integer.
    pub fn instantiate(&self, p: usize) -> Option<Vec<usize>> {
        self.k
            .iter()
            .map(|ki| {
                let s = Q::from(p as i64 + ki) / self.d();
                (s.is_integer() && *s.numer() > 0 && *s.numer() < p as i64).then(|| *s.numer() as usize)
            })
            .collect()
    }

    /// k_i with 1-based periodic indexing.
    fn k_at(&self, i: usize) -> i64 {
        self.k[(i + self.n - 1) % self.n]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Periodicity {
    Holds { t: usize },
    Fails { t: usize },
    /// Some limit equals 0 or 1.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityChecks {
    pub three_term: bool,
    pub arithmetic_mod1: bool,
    pub periodicity: Periodicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitProfile {
    pub family: SkipFamily,
    /// `v*_0 … v*_{n−1}`.
    #[serde(serialize_with = "ser_ratios", deserialize_with = "de_ratios")]
    pub v_star: Vec<Q>,
    /// Some `v*_i` is 0 or 1.
    pub touches_vertex: bool,
    /// Every `v*_i` lies in `[0, 1]`; false means no sequence of actual
    /// geodesics has these limits.
    pub in_unit_interval: bool,
    /// The recursion returned to 1/2 after a full period.
    pub closes: bool,
    pub identities: IdentityChecks,
}

fn ser_ratios<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&format_ratio(q))?;
    }
    seq.end()
}

fn de_ratios<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter()
        .map(|s| parse_ratio(s).ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s}"))))
        .collect()
}

pub fn format_ratio(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_ratio(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let num: i64 = a.trim().parse().ok()?;
            let den: i64 = b.trim().parse().ok()?;
            (den != 0).then(|| Q::new(num, den))
        }
        None => s.trim().parse::<i64>().ok().map(Q::from),
    }
}

/// Exact limits of the vertex ratios along a palindromic family, from
/// `v*_0 = 1/2` and
/// `v*_{i+1} = 1 − v*_i − k_{i+1}/d + 2 Σ_{j=1..n} (−1)^{j+1} (n−j+1) k_{j+i} / (d n)`.
pub fn vertex_ratio_limits(family: &SkipFamily) -> Result<LimitProfile> {
    if !family.is_palindromic() {
        return Err(Error::InvalidArgument(
            "family deviations must be palindromic; canonicalize first".into(),
        ));
    }
    let n = family.n;
    let d = family.d();
    let dn = d * Q::from(n as i64);
    let mut v = vec![Q::new(1, 2)];
    for i in 0..n {
        let mut sum = Q::from(0);
        for j in 1..=n {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            sum += Q::from(sign * (n - j + 1) as i64 * family.k_at(j + i)) / dn;
        }
        let next = Q::from(1) - v[i] - Q::from(family.k_at(i + 1)) / d + Q::from(2) * sum;
        v.push(next);
    }
    let closes = v[n] == Q::new(1, 2);
    v.truncate(n);
    let touches_vertex = v.iter().any(|x| *x == Q::from(0) || *x == Q::from(1));
    let in_unit_interval = v.iter().all(|x| *x >= Q::from(0) && *x <= Q::from(1));
    let interior = v.iter().all(|x| *x > Q::from(0) && *x < Q::from(1));
    let identities = identities_of(family, &v, interior);
    Ok(LimitProfile {
        family: family.clone(),
        v_star: v,
        touches_vertex,
        in_unit_interval,
        closes,
        identities,
    })
}

impl LimitProfile {
    pub fn csv_header() -> &'static str {
        "i,k,v_star,three_term,arithmetic_mod1,periodicity"
    }

    /// One CSV row per index, fractions written as `a/b`.
    pub fn csv_rows(&self) -> Vec<String> {
        let per = match self.identities.periodicity {
            Periodicity::Holds { t } => format!("holds t={t}"),
            Periodicity::Fails { t } => format!("fails t={t}"),
            Periodicity::NotApplicable => "not_applicable".into(),
        };
        self.v_star
            .iter()
            .enumerate()
            .map(|(i, v)| {
                format!(
                    "{i},{},{},{},{},{per}",
                    self.family.k[i],
                    format_ratio(v),
                    self.identities.three_term,
                    self.identities.arithmetic_mod1
                )
            })
            .collect()
    }
}

/// Check the three-term identity, the mod-1 arithmetic progressions on each
/// parity class, and odd periodicity of the 1/2 occurrences. Periodicity is
/// only meaningful when every limit lies strictly between 0 and 1.
pub fn check_limit_identities(profile: &LimitProfile) -> IdentityChecks {
    let interior = profile.v_star.iter().all(|x| *x > Q::from(0) && *x < Q::from(1));
    identities_of(&profile.family, &profile.v_star, interior)
}

fn identities_of(fam: &SkipFamily, v: &[Q], interior: bool) -> IdentityChecks {
    let n = v.len();
    let d = fam.d();
    let at = |i: i64| v[i.rem_euclid(n as i64) as usize];

    let three_term = (0..n as i64).all(|i| {
        let lhs = at(i - 1) + at(i + 1);
        let rhs = Q::from(2) * (Q::from(1) - at(i))
            + Q::from(fam.k_at(i as usize + n) - fam.k_at(i as usize + 1 + n)) / d;
        lhs == rhs
    });

    let frac = |q: Q| q - q.floor();
    let arithmetic_mod1 = [0i64, 1].iter().all(|&parity| {
        let diffs: Vec<Q> = (0..n as i64)
            .filter(|i| i % 2 == parity)
            .map(|i| frac(at(i + 2) - at(i)))
            .collect();
        diffs.windows(2).all(|w| w[0] == w[1])
    });

    let periodicity = if !interior {
        Periodicity::NotApplicable
    } else {
        let half = Q::new(1, 2);
        let marks: Vec<bool> = v.iter().map(|x| *x == half).collect();
        let t = (1..=n)
            .filter(|t| n.is_multiple_of(*t))
            .find(|&t| (0..n).all(|i| marks[i] == marks[(i + t) % n]))
            .unwrap_or(n);
        if t % 2 == 1 {
            Periodicity::Holds { t }
        } else {
            Periodicity::Fails { t }
        }
    };
    IdentityChecks {
        three_term,
        arithmetic_mod1,
        periodicity,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub converges: bool,
    /// Common limit of `s_ij / n_i`.
    pub c: f64,
    /// Per-position intercepts of the fit `s_ij / n_i ≈ c_j + a_j / n_i`.
    pub intercepts: Vec<f64>,
    /// Largest residual of that fit.
    pub residual: f64,
}

/// Decide whether skip ratios `s_ij / n_i` share a positive limit. Each
/// position is fitted linearly in `1/n_i`; the sequence converges when all
/// intercepts agree and are positive and the fit is exact up to rounding.
pub fn convergence_of_skips(rows: &[(usize, Vec<usize>)]) -> Result<Convergence> {
    if rows.len() < 2 {
        return Err(Error::InvalidArgument("need at least two geodesics".into()));
    }
    let period = rows[0].1.len();
    if rows.iter().any(|(_, s)| s.len() != period) {
        return Err(Error::InvalidArgument("mixed periods".into()));
    }
    let xs: Vec<f64> = rows.iter().map(|(n, _)| 1.0 / *n as f64).collect();
    let mean_x = xs.iter().sum::<f64>() / xs.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let mut intercepts = Vec::with_capacity(period);
    let mut residual: f64 = 0.0;
    for j in 0..period {
        let ys: Vec<f64> = rows.iter().map(|(n, s)| s[j] as f64 / *n as f64).collect();
        let mean_y = ys.iter().sum::<f64>() / ys.len() as f64;
        let slope = if sxx > 0.0 {
            xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum::<f64>() / sxx
        } else {
            0.0
        };
        let c = mean_y - slope * mean_x;
        for (x, y) in xs.iter().zip(&ys) {
            residual = residual.max((y - c - slope * x).abs());
        }
        intercepts.push(c);
    }
    let c = intercepts.iter().sum::<f64>() / period as f64;
    let spread = intercepts.iter().map(|x| (x - c).abs()).fold(0.0, f64::max);
    Ok(Convergence {
        converges: c > 1e-9 && spread < 1e-9 && residual < 1e-9,
        c,
        intercepts,
        residual,
    })
}

/// Convergence test for closed geodesics on increasing `X_{n_i}`, after
/// putting each skip sequence in canonical rotation.
pub fn detect_convergence(paths: &[GeodesicPath]) -> Result<Convergence> {
    let rows = paths
        .iter()
        .map(|p| {
            let n = p
                .polygon()
                .ok_or_else(|| Error::Unsupported("convergence needs polygon paths".into()))?
                .sides();
            if !p.is_closed() {
                return Err(Error::NotClosed);
            }
            Ok((n, canonical_skips(&skip_numbers(p))))
        })
        .collect::<Result<Vec<_>>>()?;
    convergence_of_skips(&rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRow {
    /// Side count; `None` for the doubled-disk limit row.
    pub n: Option<usize>,
    /// V-shape length on the inradius-1 surface.
    pub length: f64,
    pub bound: f64,
    /// Bound from the traced hit geometry; equals `bound` on V-shapes.
    pub converge_bound: f64,
    pub measured: Option<usize>,
}

impl DivergenceRow {
    pub fn csv_header() -> &'static str {
        "n,vshape_length,bound,converge_bound,minind_measured"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.9},{:.9},{:.9},{}",
            self.n.map(|n| n.to_string()).unwrap_or_else(|| "disk".into()),
            self.length,
            self.bound,
            self.converge_bound,
            self.measured.map(|m| m.to_string()).unwrap_or_default()
        )
    }
}

/// V-shape lengths and index bounds on odd-gons, with the index measured
/// directly for `n ≤ measure_upto`, followed by the doubled-disk row (the
/// diameter traversed twice).
pub fn divergence_experiment(n_list: &[usize], measure_upto: usize) -> Result<Vec<DivergenceRow>> {
    let mut rows = Vec::with_capacity(n_list.len() + 1);
    for &n in n_list {
        if n % 2 == 0 || n < 3 {
            return Err(Error::InvalidArgument(format!("divergence rows need odd n >= 3, got {n}")));
        }
        let surface = PolygonSurface::with_inradius(n, 1.0)?;
        let path = make_special(&surface, SpecialKind::Vshape)?;
        let measured = if n <= measure_upto {
            minimizing_index(&path, DEFAULT_REL_TOL, 10 * vshape_bound(n).ceil() as usize + 10)?.minind
        } else {
            None
        };
        rows.push(DivergenceRow {
            n: Some(n),
            length: path.length(),
            bound: vshape_bound(n),
            converge_bound: analytic_bounds(&path).converge_bound.unwrap_or(f64::NAN),
            measured,
        });
    }
    let diameter = make_disk_geodesic(&DiskSurface::unit(), 2, 1, 2)?;
    let report = minimizing_index(&diameter, DEFAULT_REL_TOL, 16)?;
    rows.push(DivergenceRow {
        n: None,
        length: diameter.length(),
        bound: 4.0,
        converge_bound: 4.0,
        measured: report.minind,
    });
    Ok(rows)
}
