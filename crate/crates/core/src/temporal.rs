//! Exponential ageing of evidence.
//!
//! Each context decays at its own rate `λ_θ`, so after `t` seconds a fraction
//! `κ_θ(t) = exp(−λ_θ t)` of its mass should remain. This module turns decay
//! parameters into retained fractions and retained fractions into discount
//! rate vectors, either for the three rescaling schemes or, where a solution
//! exists, for disjunctive contextual discounting.

// negated comparisons below also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::str::FromStr;

use crate::discount::{contextual_discount, ContextVector, Scheme};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;

/// `λ = ln 2 / t½`.
pub fn lambda_from_half_life(t_half: f64) -> Result<f64> {
    lambda_from_fraction_life(2.0, t_half)
}

/// `λ = ln N / t_{1/N}`: after `t` seconds one N-th of the mass remains.
pub fn lambda_from_fraction_life(n: f64, t: f64) -> Result<f64> {
    if !(n > 1.0) || !n.is_finite() {
        return Err(Error::InvalidFraction(n));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveTime(t));
    }
    let lambda = n.ln() / t;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidRate(lambda));
    }
    Ok(lambda)
}

/// How a context's decay is parameterised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    HalfLife(f64),
    Rate(f64),
    FractionLife { n: f64, t: f64 },
}

impl Decay {
    pub fn lambda(self) -> Result<f64> {
        match self {
            Decay::HalfLife(t) => lambda_from_half_life(t),
            Decay::Rate(l) if l > 0.0 && l.is_finite() => Ok(l),
            Decay::Rate(l) => Err(Error::InvalidRate(l)),
            Decay::FractionLife { n, t } => lambda_from_fraction_life(n, t),
        }
    }
}

/// Per-context decay rates in 1/s.
#[derive(Debug, Clone, PartialEq)]
pub struct DecaySpec {
    frame: Frame,
    rates: Vec<(Subset, f64)>,
}

impl DecaySpec {
    pub fn new<I>(frame: Frame, entries: I) -> Result<DecaySpec>
    where
        I: IntoIterator<Item = (Subset, Decay)>,
    {
        let mut rates: Vec<(Subset, f64)> = Vec::new();
        for (theta, decay) in entries {
            frame.check(theta)?;
            if theta.is_empty() {
                return Err(Error::EmptyContext);
            }
            if rates.iter().any(|(t, _)| *t == theta) {
                return Err(Error::DuplicateContext(theta));
            }
            rates.push((theta, decay.lambda()?));
        }
        Ok(DecaySpec { frame, rates })
    }

    /// One half-life per class, in frame order.
    pub fn from_half_lives(frame: Frame, half_lives: &[f64]) -> Result<DecaySpec> {
        if half_lives.len() != frame.size() {
            return Err(Error::FrameMismatch);
        }
        let entries: Vec<_> = half_lives
            .iter()
            .enumerate()
            .map(|(i, &h)| (Subset::singleton(i), Decay::HalfLife(h)))
            .collect();
        DecaySpec::new(frame, entries)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn rates(&self) -> &[(Subset, f64)] {
        &self.rates
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.rates.iter().map(|&(_, l)| l).collect()
    }
}

/// Retained fractions `κ_θ ∈ (0, 1]` at a given age.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaVector {
    frame: Frame,
    entries: Vec<(Subset, f64)>,
    time: f64,
}

impl KappaVector {
    pub fn new<I>(frame: Frame, entries: I, time: f64) -> Result<KappaVector>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut out: Vec<(Subset, f64)> = Vec::new();
        for (theta, kappa) in entries {
            frame.check(theta)?;
            if theta.is_empty() {
                return Err(Error::EmptyContext);
            }
            if out.iter().any(|(t, _)| *t == theta) {
                return Err(Error::DuplicateContext(theta));
            }
            if !(kappa > 0.0 && kappa <= 1.0) {
                return Err(Error::NonPositiveKappa(kappa));
            }
            out.push((theta, kappa));
        }
        Ok(KappaVector {
            frame,
            entries: out,
            time,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn entries(&self) -> &[(Subset, f64)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|&(_, k)| k).collect()
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// `κ_θ = exp(−λ_θ t)`.
pub fn kappa_at(spec: &DecaySpec, t: f64) -> Result<KappaVector> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let entries = spec.rates.iter().map(|&(theta, l)| (theta, (-l * t).exp()));
    // exp underflows to zero for very old evidence
    KappaVector::new(spec.frame.clone(), entries, t)
}

/// Raw solution of `κ_θ = Π_{B ≠ θ} (1 − α_B)` over singleton contexts,
/// `α_i = 1 − (Π_{j≠i} κ_j / κ_i^{K−2})^{1/(K−1)}`, evaluated in log space.
/// Entries may fall outside `[0, 1]`.
pub fn raw_contextual_alphas(kappa: &KappaVector) -> Result<Vec<f64>> {
    let k = kappa.frame.size();
    let mut covered = Subset::EMPTY;
    for &(theta, value) in &kappa.entries {
        if theta.len() != 1 || covered.intersects(theta) {
            return Err(Error::NotSingletonCover);
        }
        if !(value > 0.0) {
            return Err(Error::NonPositiveKappa(value));
        }
        covered = covered.union(theta);
    }
    if covered != kappa.frame.full() {
        return Err(Error::NotSingletonCover);
    }
    if k == 1 {
        return Ok(vec![1.0 - kappa.entries[0].1]);
    }
    let logs: Vec<f64> = kappa.entries.iter().map(|&(_, v)| v.ln()).collect();
    let total: f64 = logs.iter().sum();
    let k = k as f64;
    Ok(logs
        .iter()
        .map(|&own| {
            let others = total - own;
            1.0 - ((others - (k - 2.0) * own) / (k - 1.0)).exp()
        })
        .collect())
}

/// Discount rates for contextual discounting that age each singleton by
/// exactly `κ`. Fails with [`Error::Infeasible`] when any rate leaves `[0, 1]`.
pub fn contextual_alphas_from_kappa(kappa: &KappaVector) -> Result<ContextVector> {
    let alphas = raw_contextual_alphas(kappa)?;
    if alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
        return Err(Error::Infeasible { alphas });
    }
    let contexts = kappa
        .entries
        .iter()
        .zip(&alphas)
        .map(|(&(theta, _), &a)| (theta, a));
    ContextVector::new(kappa.frame.clone(), contexts)
}

/// `α_θ = 1 − κ_θ`: each scheme then keeps exactly `κ_θ` of a singleton's
/// mass.
pub fn scheme_alphas_from_kappa(kappa: &KappaVector) -> Result<ContextVector> {
    alphas_from_kappa(kappa, AlphaMode::Postulate)
}

/// Mapping from retained fractions to scheme discount rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMode {
    /// `α = 1 − κ`, honouring the decay law.
    #[default]
    Postulate,
    /// `α = κ`, the mapping used to print the published temporal tables.
    KappaAsRate,
}

impl AlphaMode {
    pub fn name(self) -> &'static str {
        match self {
            AlphaMode::Postulate => "postulate",
            AlphaMode::KappaAsRate => "paper-table",
        }
    }
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlphaMode> {
        match s {
            "postulate" => Ok(AlphaMode::Postulate),
            "paper-table" => Ok(AlphaMode::KappaAsRate),
            other => Err(Error::Unsupported(format!(
                "unknown alpha mode `{other}` (expected postulate or paper-table)"
            ))),
        }
    }
}

pub fn alphas_from_kappa(kappa: &KappaVector, mode: AlphaMode) -> Result<ContextVector> {
    let contexts = kappa.entries.iter().map(|&(theta, k)| match mode {
        AlphaMode::Postulate => (theta, 1.0 - k),
        AlphaMode::KappaAsRate => (theta, k),
    });
    ContextVector::new(kappa.frame.clone(), contexts)
}

/// Ages `m` by `t` seconds with one of the rescaling schemes.
pub fn temporal_discount(
    m: &MassFunction,
    spec: &DecaySpec,
    t: f64,
    scheme: Scheme,
    mode: AlphaMode,
) -> Result<MassFunction> {
    let kappa = kappa_at(spec, t)?;
    let ctx = alphas_from_kappa(&kappa, mode)?;
    scheme.apply(m, &ctx)
}

/// Ages `m` by `t` seconds with disjunctive contextual discounting, when
/// the decay can be expressed that way.
pub fn temporal_contextual_discount(
    m: &MassFunction,
    spec: &DecaySpec,
    t: f64,
) -> Result<MassFunction> {
    let kappa = kappa_at(spec, t)?;
    let ctx = contextual_alphas_from_kappa(&kappa)?;
    contextual_discount(m, &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    fn w3() -> Frame {
        Frame::numbered(3).unwrap()
    }

    #[test]
    fn half_life_rates() {
        assert!((lambda_from_half_life(1.0).unwrap() - LN_2).abs() < 1e-15);
        assert!((lambda_from_half_life(5.0).unwrap() - 0.1386).abs() < 1e-4);
        assert!((lambda_from_half_life(LN_2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(lambda_from_half_life(0.0), Err(Error::NonPositiveTime(0.0)));
        assert_eq!(
            lambda_from_half_life(-2.0),
            Err(Error::NonPositiveTime(-2.0))
        );
    }

    #[test]
    fn fraction_life_rates() {
        assert_eq!(
            lambda_from_fraction_life(2.0, 4.0).unwrap(),
            lambda_from_half_life(4.0).unwrap()
        );
        assert!((lambda_from_fraction_life(E, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambda_from_fraction_life(16.0, 4.0).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(
            lambda_from_fraction_life(1.0, 4.0),
            Err(Error::InvalidFraction(1.0))
        );
        assert_eq!(
            lambda_from_fraction_life(3.0, 0.0),
            Err(Error::NonPositiveTime(0.0))
        );
    }

    #[test]
    fn half_life_rate_times_half_life_is_ln2() {
        for h in [0.1, 1.0, 4.0, 15.0, 1e6] {
            let spec = DecaySpec::new(
                Frame::numbered(1).unwrap(),
                [(Subset(1), Decay::HalfLife(h))],
            )
            .unwrap();
            assert!((spec.lambdas()[0] * h - LN_2).abs() < 1e-15);
        }
    }

    #[test]
    fn decay_spec_validation() {
        let f = w3();
        assert_eq!(
            DecaySpec::new(f.clone(), [(Subset(1), Decay::Rate(0.0))]),
            Err(Error::InvalidRate(0.0))
        );
        assert_eq!(
            DecaySpec::new(
                f.clone(),
                [(Subset(1), Decay::Rate(1.0)), (Subset(1), Decay::Rate(2.0))]
            ),
            Err(Error::DuplicateContext(Subset(1)))
        );
        assert_eq!(
            DecaySpec::new(f, [(Subset::EMPTY, Decay::Rate(1.0))]),
            Err(Error::EmptyContext)
        );
    }

    #[test]
    fn kappa_examples() {
        let c1 = DecaySpec::from_half_lives(w3(), &[1.0, 4.0, 15.0]).unwrap();
        let k = kappa_at(&c1, 4.0).unwrap();
        for (got, want) in k.values().iter().zip([0.0625, 0.5, 0.8312]) {
            assert!((got - want).abs() < 5e-4);
        }
        let c2 = DecaySpec::from_half_lives(w3(), &[5.0, 4.0, 15.0]).unwrap();
        assert!((kappa_at(&c2, 4.0).unwrap().values()[0] - 0.5743).abs() < 5e-4);
        assert!(kappa_at(&c2, 0.0)
            .unwrap()
            .values()
            .iter()
            .all(|&k| k == 1.0));
        assert_eq!(kappa_at(&c2, -1.0), Err(Error::NegativeTime(-1.0)));
    }

    #[test]
    fn solver_examples() {
        let f = w3();
        let k2 = KappaVector::new(
            f.clone(),
            [(Subset(1), 0.5743), (Subset(2), 0.5), (Subset(4), 0.8312)],
            4.0,
        )
        .unwrap();
        let ctx = contextual_alphas_from_kappa(&k2).unwrap();
        for (&(_, got), want) in ctx.contexts().iter().zip([0.1493, 0.0228, 0.4122]) {
            assert!((got - want).abs() < 1e-3, "{got} vs {want}");
        }

        let k1 = KappaVector::new(
            f.clone(),
            [(Subset(1), 0.0625), (Subset(2), 0.5), (Subset(4), 0.8312)],
            4.0,
        )
        .unwrap();
        match contextual_alphas_from_kappa(&k1) {
            Err(Error::Infeasible { alphas }) => {
                for (got, want) in alphas.iter().zip([-1.5787, 0.6777, 0.8061]) {
                    assert!((got - want).abs() < 1e-3, "{got} vs {want}");
                }
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn symmetric_kappa_gives_uniform_rates() {
        // equal rates: κ = (1 − α)^{K−1}
        for k in 2..=6 {
            let f = Frame::numbered(k).unwrap();
            let c: f64 = 0.7;
            let kv = KappaVector::new(f.clone(), (0..k).map(|i| (Subset::singleton(i), c)), 1.0)
                .unwrap();
            let alphas = raw_contextual_alphas(&kv).unwrap();
            let expected = 1.0 - c.powf(1.0 / (k as f64 - 1.0));
            for a in alphas {
                assert!((a - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solver_preconditions() {
        let f = w3();
        let partial =
            KappaVector::new(f.clone(), [(Subset(1), 0.5), (Subset(2), 0.5)], 1.0).unwrap();
        assert_eq!(
            raw_contextual_alphas(&partial),
            Err(Error::NotSingletonCover)
        );
        let pair = KappaVector::new(f.clone(), [(Subset(3), 0.5), (Subset(4), 0.5)], 1.0).unwrap();
        assert_eq!(raw_contextual_alphas(&pair), Err(Error::NotSingletonCover));
        assert_eq!(
            KappaVector::new(f, [(Subset(1), 0.0)], 1.0),
            Err(Error::NonPositiveKappa(0.0))
        );
        let one = KappaVector::new(Frame::numbered(1).unwrap(), [(Subset(1), 0.25)], 1.0).unwrap();
        assert_eq!(raw_contextual_alphas(&one).unwrap(), vec![0.75]);
    }

    #[test]
    fn scheme_alpha_mapping() {
        let f = w3();
        let ones =
            KappaVector::new(f.clone(), (0..3).map(|i| (Subset::singleton(i), 1.0)), 0.0).unwrap();
        assert!(scheme_alphas_from_kappa(&ones)
            .unwrap()
            .contexts()
            .iter()
            .all(|&(_, a)| a == 0.0));

        let half = KappaVector::new(f.clone(), [(Subset(1), 0.5)], 1.0).unwrap();
        assert_eq!(
            scheme_alphas_from_kappa(&half).unwrap().contexts(),
            &[(Subset(1), 0.5)]
        );

        let c1 = KappaVector::new(
            f.clone(),
            [(Subset(1), 0.0625), (Subset(2), 0.5), (Subset(4), 0.8312)],
            4.0,
        )
        .unwrap();
        let ctx = scheme_alphas_from_kappa(&c1).unwrap();
        let alphas: Vec<f64> = ctx.contexts().iter().map(|&(_, a)| a).collect();
        for (got, want) in alphas.iter().zip([0.9375, 0.5, 0.1688]) {
            assert!((got - want).abs() < 1e-12);
        }
        let m = MassFunction::new(f, [(Subset(1), 0.3), (Subset(2), 0.7)]).unwrap();
        let out = Scheme::Conservative.apply(&m, &ctx).unwrap();
        assert!((out.mass(Subset(1)) - 0.01875).abs() < 1e-12);
    }

    #[test]
    fn temporal_pipeline() {
        let f = w3();
        let m = MassFunction::new(
            f.clone(),
            [
                (Subset(1), 0.3),
                (Subset(2), 0.2),
                (Subset(3), 0.2),
                (Subset(4), 0.2),
                (Subset(7), 0.1),
            ],
        )
        .unwrap();
        let c1 = DecaySpec::from_half_lives(f, &[1.0, 4.0, 15.0]).unwrap();
        for s in Scheme::ALL {
            let same = temporal_discount(&m, &c1, 0.0, s, AlphaMode::Postulate).unwrap();
            assert!(same.max_deviation(&m) < 1e-15);
        }
        let aged =
            temporal_discount(&m, &c1, 4.0, Scheme::Conservative, AlphaMode::Postulate).unwrap();
        assert!((aged.mass(Subset(1)) - 0.01875).abs() < 1e-12);
        assert!((aged.mass(Subset(2)) - 0.1).abs() < 1e-12);

        let table =
            temporal_discount(&m, &c1, 4.0, Scheme::Conservative, AlphaMode::KappaAsRate).unwrap();
        assert!((table.mass(Subset(7)) - 0.49124).abs() < 5e-4);

        assert!(matches!(
            temporal_contextual_discount(&m, &c1, 4.0),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn alpha_mode_names() {
        assert_eq!(
            "postulate".parse::<AlphaMode>().unwrap(),
            AlphaMode::Postulate
        );
        assert_eq!(
            "paper-table".parse::<AlphaMode>().unwrap(),
            AlphaMode::KappaAsRate
        );
        assert!("other".parse::<AlphaMode>().is_err());
        assert_eq!(AlphaMode::default().to_string(), "postulate");
    }
}
