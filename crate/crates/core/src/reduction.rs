//! Yes-no experiments and state reduction.
//!
//! A yes-no experiment asks whether an observable's value lies in a window;
//! its observable is the spectral projector `p` of that window. Conditioning
//! on "yes" maps `Psi` to `Psi'(A) = Psi(pAp) / Psi(p)`. The same number is
//! recovered empirically as a classical conditional mean over an ensemble of
//! elementary states, using one device type that contains both `pAp` and `p`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{DynamicalVariable, Observable, Projector};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{self, CMatrix};
use crate::masa::{masa_from_family, CommutingFamily, DeviceType, Registry};
use crate::probability::{EnsembleSample, MeanEstimate};
use crate::random;
use crate::states::QuantumState;
use crate::tol;
use crate::C64;

/// Finite union of disjoint closed intervals on the extended real line.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::InvalidInterval(format!("[{lo}, {hi}]")));
            }
        }
        for w in intervals.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(Error::InvalidInterval(format!(
                    "[{}, {}] and [{}, {}] overlap or are out of order",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn full() -> Self {
        Self { intervals: vec![(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    pub fn single(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Membership with endpoints widened by `margin`.
    pub fn contains(&self, x: f64, margin: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| x >= lo - margin && x <= hi + margin)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Num(f64),
    Text(String),
}

impl Endpoint {
    fn encode(x: f64) -> Self {
        if x == f64::INFINITY {
            Endpoint::Text("inf".into())
        } else if x == f64::NEG_INFINITY {
            Endpoint::Text("-inf".into())
        } else {
            Endpoint::Num(x)
        }
    }

    fn decode(self) -> std::result::Result<f64, String> {
        match self {
            Endpoint::Num(x) => Ok(x),
            Endpoint::Text(s) => match s.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(format!("bad interval endpoint `{other}`")),
            },
        }
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[Endpoint; 2]> =
            self.intervals.iter().map(|&(lo, hi)| [Endpoint::encode(lo), Endpoint::encode(hi)]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[Endpoint; 2]>::deserialize(d)?;
        let mut intervals = Vec::with_capacity(raw.len());
        for [lo, hi] in raw {
            let lo = lo.decode().map_err(serde::de::Error::custom)?;
            let hi = hi.decode().map_err(serde::de::Error::custom)?;
            intervals.push((lo, hi));
        }
        IntervalUnion::new(intervals).map_err(serde::de::Error::custom)
    }
}

/// Sum of the eigenprojectors of `a` whose eigenvalue lies in `window`.
pub fn spectral_projector(a: &Observable, window: &IntervalUnion) -> Result<Projector> {
    let eig = a.eigen()?;
    let scale = eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let margin = tol::scaled(tol::EIGEN, scale);
    let n = a.dim();
    let mut m = CMatrix::zeros(n, n);
    for (k, &l) in eig.values.iter().enumerate() {
        if window.contains(l, margin) {
            let v = eig.vectors.column(k);
            m += v * v.adjoint();
        }
    }
    Ok(Projector::from_matrix_unchecked(m))
}

#[derive(Debug, Clone)]
pub struct YesNoExperiment {
    observable: Observable,
    window: IntervalUnion,
    projector: Projector,
}

impl YesNoExperiment {
    pub fn new(observable: Observable, window: IntervalUnion) -> Result<Self> {
        let projector = spectral_projector(&observable, &window)?;
        Ok(Self { observable, window, projector })
    }

    /// Experiment whose projector is given directly (the observable is `p` itself).
    pub fn from_projector(p: Projector) -> Self {
        Self {
            observable: p.observable().clone(),
            window: IntervalUnion { intervals: vec![(1.0, 1.0)] },
            projector: p,
        }
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    pub fn window(&self) -> &IntervalUnion {
        &self.window
    }

    pub fn projector(&self) -> &Projector {
        &self.projector
    }
}

/// Reduced state after a "yes" answer, with the answer's probability.
pub fn collapse_with_probability(psi: &QuantumState, p: &Projector) -> Result<(QuantumState, f64)> {
    if p.dim() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: psi.dim(), found: p.dim() });
    }
    let prob = psi.mean(p.observable())?;
    if prob <= tol::ZERO_PROB {
        return Err(Error::ZeroProbability(prob));
    }
    let pm = p.matrix();
    let sandwich = pm * psi.rho() * pm;
    let t = sandwich.trace().re;
    let state = QuantumState::new(linalg::hermitize(&(sandwich / C64::new(t, 0.0))))?;
    Ok((state, prob))
}

/// `rho' = p rho p / trace(p rho p)`.
pub fn collapse(psi: &QuantumState, p: &Projector) -> Result<QuantumState> {
    Ok(collapse_with_probability(psi, p)?.0)
}

/// Largest residuals of the identities a reduced state must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionReport {
    /// `max(|Psi'(p) - 1|, |Psi'(I) - 1|)`.
    pub eq22: f64,
    /// Largest `|Psi'(A(I - p))|^2 - Psi'(A*A) Psi'(I - p)`, floored at zero.
    pub eq23: f64,
    /// Largest right-hand side `Psi'(A*A) Psi'(I - p)`.
    pub eq23_rhs: f64,
    /// Largest deviation among `Psi'(A)`, `Psi'(Ap)`, `Psi'(pA)`, `Psi'(pAp)`
    /// and `Psi'(pAp) / Psi'(p)`.
    pub eq24_26: f64,
    pub trials: usize,
}

impl ReductionReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.eq22 <= tol && self.eq23 <= tol && self.eq24_26 <= tol
    }
}

/// Checks the reduced-state identities on `trials` random dynamical
/// variables drawn from `seed` (one ChaCha8 stream per trial).
pub fn verify_reduction_identities(
    psi_prime: &QuantumState,
    p: &Projector,
    trials: usize,
    seed: u64,
) -> Result<ReductionReport> {
    let n = psi_prime.dim();
    if p.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
    }
    let id = DynamicalVariable::identity(n);
    let pv = p.observable().value();
    let q = p.complement();
    let psi_p = psi_prime.mean(p.observable())?;
    let eq22 = (psi_p - 1.0).abs().max((psi_prime.mean(&Observable::identity(n))? - 1.0).abs());
    let psi_q = psi_prime.mean(q.observable())?;

    let base = ChaCha8Rng::seed_from_u64(seed);
    let per_trial = exec::map_range(trials, |t| -> Result<(f64, f64, f64)> {
        let mut rng = base.clone();
        rng.set_stream(t as u64);
        let a = random::matrix(n, &mut rng);
        let ext = |u: &DynamicalVariable| psi_prime.extend(u);

        let a_q = a.try_mul(&id.try_sub(pv)?)?;
        let lhs = ext(&a_q)?.norm_sqr();
        let rhs = ext(&a.adjoint().try_mul(&a)?)?.re * psi_q;

        let base_val = ext(&a)?;
        let ap = ext(&a.try_mul(pv)?)?;
        let pa = ext(&pv.try_mul(&a)?)?;
        let pap = ext(&pv.try_mul(&a)?.try_mul(pv)?)?;
        let dev = [ap, pa, pap, pap / psi_p].iter().map(|v| (v - base_val).norm()).fold(0.0, f64::max);
        Ok(((lhs - rhs).max(0.0), rhs, dev))
    });

    let mut report = ReductionReport { eq22, eq23: 0.0, eq23_rhs: 0.0, eq24_26: 0.0, trials };
    for r in per_trial {
        let (viol, rhs, dev) = r?;
        report.eq23 = report.eq23.max(viol);
        report.eq23_rhs = report.eq23_rhs.max(rhs);
        report.eq24_26 = report.eq24_26.max(dev);
    }
    Ok(report)
}

/// `pAp`, symmetrized.
pub fn compress(a: &Observable, p: &Projector) -> Result<Observable> {
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: a.dim() });
    }
    Ok(Observable::from_matrix_unchecked(p.matrix() * a.matrix() * p.matrix()))
}

/// A device type containing both `pAp` and `p`, completed from `seed`.
pub fn conditioning_device(a: &Observable, p: &Projector, seed: u64) -> Result<DeviceType> {
    let ap = compress(a, p)?;
    let family = CommutingFamily::new(vec![ap, p.observable().clone()], tol::EIGEN)?;
    masa_from_family("eta", &family, seed)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionalEstimate {
    pub mean: f64,
    pub stderr: f64,
    /// Draws for which `p` took the value one.
    pub conditioned: usize,
    pub n: usize,
    pub seed: u64,
}

/// Mean of `pAp` over the draws on which `p` answered "yes".
///
/// Uses `device` when given (it must contain `pAp` and `p`), otherwise builds
/// one with [`conditioning_device`].
pub fn conditional_mean_empirical(
    psi: &QuantumState,
    a: &Observable,
    p: &Projector,
    device: Option<&DeviceType>,
    n: usize,
    seed: u64,
) -> Result<ConditionalEstimate> {
    let ap = compress(a, p)?;
    let built;
    let eta = match device {
        Some(d) => d,
        None => {
            built = conditioning_device(a, p, seed)?;
            &built
        }
    };
    let on_p = eta.character_values(p.observable())?;
    let on_ap = eta.character_values(&ap)?;

    let registry = Registry::new(vec![eta.clone()])?;
    let sample = EnsembleSample::generate(psi, &registry, seed, n)?;
    let values: Vec<f64> =
        sample.column(eta.id())?.into_iter().filter(|&k| on_p[k] > 0.5).map(|k| on_ap[k]).collect();
    let est = MeanEstimate::from_values(&values).ok_or(Error::ZeroProbability(0.0))?;
    Ok(ConditionalEstimate { mean: est.mean, stderr: est.stderr, conditioned: est.n, n, seed })
}

/// One "yes" step of a sequence of experiments.
#[derive(Debug, Clone)]
pub struct YesNoStep {
    pub probability: f64,
    pub state: QuantumState,
}

/// Follows the "yes" branch through each experiment in turn.
pub fn sequential_yes_no(psi: &QuantumState, experiments: &[YesNoExperiment]) -> Result<Vec<YesNoStep>> {
    if experiments.is_empty() {
        return Err(Error::Empty("experiment list"));
    }
    let mut state = psi.clone();
    let mut out = Vec::with_capacity(experiments.len());
    for e in experiments {
        let (next, probability) = collapse_with_probability(&state, e.projector())?;
        out.push(YesNoStep { probability, state: next.clone() });
        state = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{ket, pauli_x, pauli_z, plus};

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        linalg::frobenius(&(a - b)) <= tol
    }

    fn proj(v: &crate::linalg::CVector) -> Projector {
        Projector::rank_one(v).unwrap()
    }

    #[test]
    fn spectral_projector_examples() {
        let up = spectral_projector(&pauli_z(), &IntervalUnion::single(0.5, 1.5).unwrap()).unwrap();
        assert!(close(up.matrix(), proj(&ket(2, 0)).matrix(), 1e-15));
        let all = spectral_projector(&pauli_z(), &IntervalUnion::single(-2.0, 2.0).unwrap()).unwrap();
        assert!(close(all.matrix(), &CMatrix::identity(2, 2), 1e-15));

        let d = Observable::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let w = IntervalUnion::new(vec![(0.9, 1.1), (2.9, 3.1)]).unwrap();
        let p = spectral_projector(&d, &w).unwrap();
        let want = Observable::diagonal(&[1.0, 0.0, 1.0]).unwrap();
        assert!(close(p.matrix(), want.matrix(), 1e-15));

        let full = spectral_projector(&d, &IntervalUnion::full()).unwrap();
        assert!(close(full.matrix(), &CMatrix::identity(3, 3), 1e-14));
        let none = spectral_projector(&d, &IntervalUnion::empty()).unwrap();
        assert_eq!(none.matrix(), &CMatrix::zeros(3, 3));
    }

    #[test]
    fn endpoints_are_inclusive_with_margin() {
        let w = IntervalUnion::single(1.0, 2.0).unwrap();
        assert!(w.contains(1.0 - 1e-10, 1e-9));
        assert!(!w.contains(0.99, 1e-9));
    }

    #[test]
    fn interval_validation_and_json() {
        assert!(IntervalUnion::new(vec![(2.0, 1.0)]).is_err());
        assert!(IntervalUnion::new(vec![(0.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(IntervalUnion::new(vec![(1.0, 2.0), (-1.0, 0.0)]).is_err());
        let w: IntervalUnion = serde_json::from_str(r#"[["-inf", 0], [0.5, "inf"]]"#).unwrap();
        assert_eq!(w.intervals()[0].0, f64::NEG_INFINITY);
        let back = serde_json::to_string(&w).unwrap();
        assert_eq!(back, r#"[["-inf",0.0],[0.5,"inf"]]"#);
    }

    #[test]
    fn collapse_examples() {
        let p0 = proj(&ket(2, 0));
        let c = collapse(&QuantumState::maximally_mixed(2), &p0).unwrap();
        assert!(close(c.rho(), p0.matrix(), 1e-15));

        let zero = QuantumState::pure(&ket(2, 0)).unwrap();
        let c = collapse(&zero, &p0).unwrap();
        assert!(close(c.rho(), zero.rho(), 1e-15));

        assert!(matches!(collapse(&zero, &proj(&ket(2, 1))), Err(Error::ZeroProbability(_))));
    }

    #[test]
    fn reduction_identities_hold() {
        let psi = QuantumState::pure(&plus()).unwrap();
        let p0 = proj(&ket(2, 0));
        let c = collapse(&psi, &p0).unwrap();
        let r = verify_reduction_identities(&c, &p0, 200, 1).unwrap();
        assert!(r.eq22 <= 1e-10);
        assert!(r.eq23_rhs <= 1e-10);
        assert!(r.passed(1e-9), "{r:?}");
    }

    #[test]
    fn conditional_mean_examples() {
        let p0 = proj(&ket(2, 0));
        let e =
            conditional_mean_empirical(&QuantumState::maximally_mixed(2), &pauli_z(), &p0, None, 10_000, 3)
                .unwrap();
        assert!((e.mean - 1.0).abs() < 1e-12);
        assert!(e.conditioned > 0 && e.conditioned < 10_000);

        let plus_state = QuantumState::pure(&plus()).unwrap();
        let e = conditional_mean_empirical(&plus_state, &pauli_z(), &p0, None, 100_000, 4).unwrap();
        assert!((e.mean - 1.0).abs() <= 3.0 * e.stderr + 1e-9);

        let zero = QuantumState::pure(&ket(2, 1)).unwrap();
        assert!(matches!(
            conditional_mean_empirical(&zero, &pauli_z(), &p0, None, 1000, 4),
            Err(Error::ZeroProbability(_))
        ));
    }

    #[test]
    fn sure_event_recovers_unconditional_mean() {
        let psi = QuantumState::pure(&plus()).unwrap();
        let a = pauli_x().combine(0.3, &pauli_z(), 0.8).unwrap();
        let id = Projector::identity(2);
        let eta = conditioning_device(&a, &id, 11).unwrap();
        let cond = conditional_mean_empirical(&psi, &a, &id, Some(&eta), 5000, 11).unwrap();
        let reg = Registry::new(vec![eta.clone()]).unwrap();
        let plain = EnsembleSample::generate(&psi, &reg, 11, 5000).unwrap().mean(&eta, &a).unwrap();
        assert_eq!(cond.conditioned, 5000);
        assert!((cond.mean - plain.mean).abs() < 1e-12);
    }

    #[test]
    fn sequential_examples() {
        let psi = QuantumState::pure(&plus()).unwrap();
        let e = YesNoExperiment::from_projector(proj(&ket(2, 0)));
        let steps = sequential_yes_no(&psi, &[e.clone(), e.clone()]).unwrap();
        assert!((steps[0].probability - 0.5).abs() < 1e-15);
        assert!((steps[1].probability - 1.0).abs() < 1e-12);

        let zero = QuantumState::pure(&ket(2, 0)).unwrap();
        let z_up = YesNoExperiment::new(pauli_z(), IntervalUnion::single(0.5, 1.5).unwrap()).unwrap();
        let x_up = YesNoExperiment::new(pauli_x(), IntervalUnion::single(0.5, 1.5).unwrap()).unwrap();
        let steps = sequential_yes_no(&zero, &[z_up.clone(), x_up]).unwrap();
        assert!((steps[1].probability - 0.5).abs() < 1e-12);

        let z_down = YesNoExperiment::new(pauli_z(), IntervalUnion::single(-1.5, -0.5).unwrap()).unwrap();
        assert!(matches!(sequential_yes_no(&zero, &[z_up, z_down]), Err(Error::ZeroProbability(_))));
        assert!(sequential_yes_no(&zero, &[]).is_err());
    }
}
