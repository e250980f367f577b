use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::DensityField;
use super::halfspace::HalfSpace;
use super::sample::{random_field, SampleShape};
use crate::arith::{int, rat, RationalFunction};
use crate::error::Result;
use crate::sl2::{Engine, Generator};
use crate::WeightParam;

/// An identity that failed on a concrete field.
#[derive(Debug, Clone)]
pub struct RealizationFailure {
    pub identity: String,
    pub witness: DensityField,
    pub lhs: DensityField,
    pub rhs: DensityField,
}

#[derive(Debug, Clone)]
pub struct RealizationReport {
    pub d: i64,
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<RealizationFailure>,
}

impl RealizationReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker<'a> {
    model: &'a HalfSpace,
    checks: usize,
    failures: Vec<RealizationFailure>,
}

impl Checker<'_> {
    fn expect(&mut self, identity: String, f: &DensityField, lhs: DensityField, rhs: DensityField) {
        self.checks += 1;
        // fields compare by terms; weights are bookkeeping
        let rhs = rhs.with_weight(lhs.weight.clone());
        if lhs != rhs {
            self.failures.push(RealizationFailure {
                identity,
                witness: f.clone(),
                lhs,
                rhs,
            });
        }
    }

    fn x_pow(&self, k: usize, f: &DensityField) -> DensityField {
        f.mul_r(&int(k as i64))
    }

    fn basic(&mut self, f: &DensityField) {
        let m = self.model;
        let h = m.h_of(&f.weight);
        let xy = m.x(&m.y(f)).sub(&m.y(&m.x(f)));
        self.expect("[x,y] = h".into(), f, xy, f.scale(&h));
        let hx = m.h(&m.x(f)).sub(&m.x(&m.h(f)));
        self.expect("[h,x] = 2x".into(), f, hx, m.x(f).scale(&int(2)));
        let hy = m.h(&m.y(f)).sub(&m.y(&m.h(f)));
        self.expect("[h,y] = -2y".into(), f, hy, m.y(f).scale(&int(-2)));
    }

    /// `[x^k, y] = k x^{k-1}(h + k - 1)` and `[x, y^k] = k y^{k-1}(h - k + 1)`.
    fn powers(&mut self, f: &DensityField, max_k: usize) {
        let m = self.model;
        let h = m.h_of(&f.weight);
        for k in 1..=max_k {
            let kk = int(k as i64);
            let lhs = self.x_pow(k, &m.y(f)).sub(&m.y(&self.x_pow(k, f)));
            let rhs = self
                .x_pow(k - 1, f)
                .scale(&(&kk * (&h + &kk - int(1))));
            self.expect(format!("[x^{k},y] = {k} x^{} (h+{})", k - 1, k - 1), f, lhs, rhs);
            let lhs = m.x(&m.y_pow(k, f)).sub(&m.y_pow(k, &m.x(f)));
            let rhs = m.y_pow(k - 1, f).scale(&(&kk * (&h - &kk + int(1))));
            self.expect(format!("[x,y^{k}] = {k} y^{} (h-{})", k - 1, k - 1), f, lhs, rhs);
        }
    }

    /// A word reduced by the abstract engine, then evaluated, against the
    /// direct model computation.
    fn word(&mut self, f: &DensityField, word: &[Generator]) -> Result<()> {
        let m = self.model;
        let h = m.h_of(&f.weight);
        let engine = Engine::new(WeightParam::Value(h.clone()));
        let target = engine.section("f", &RationalFunction::constant(h.clone()))?;
        let form = engine.reduce(word, &target);
        let mut bindings = BTreeMap::new();
        bindings.insert("f".to_string(), f.clone());
        let via_engine = m.eval_form(&form, &h, &bindings)?;
        let mut direct = f.clone();
        for g in word.iter().rev() {
            direct = m.apply_generator(g, &h, &bindings, &direct)?;
        }
        let name = word
            .iter()
            .map(|g| format!("{g:?}"))
            .collect::<Vec<_>>()
            .join(" ");
        self.expect(format!("engine word [{name}]"), f, via_engine, direct);
        Ok(())
    }
}

fn random_word(rng: &mut impl Rng, max_len: usize, with_logs: bool) -> Vec<Generator> {
    let len = rng.gen_range(1..=max_len);
    let alphabet: &[Generator] = if with_logs {
        &[
            Generator::X,
            Generator::Y,
            Generator::H,
            Generator::LogX,
            Generator::LogTau,
        ]
    } else {
        &[Generator::X, Generator::Y]
    };
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone())
        .collect()
}

/// Randomized check of the sl(2) relations and their power identities for
/// `k <= 8` in the Riemannian model of dimension `d`.
pub fn sl2_realization_check(d: i64, samples: usize) -> Result<RealizationReport> {
    sl2_realization_check_in(&HalfSpace::new(d), samples, 8, 0x5eed + d as u64)
}

pub fn sl2_realization_check_in(
    model: &HalfSpace,
    samples: usize,
    max_k: usize,
    seed: u64,
) -> Result<RealizationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SampleShape::new(model.n());
    let mut c = Checker {
        model,
        checks: 0,
        failures: Vec::new(),
    };
    for i in 0..samples {
        let w = rat(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=4));
        let f = random_field(&mut rng, &shape, w);
        c.basic(&f);
        c.powers(&f, max_k);
        let word = random_word(&mut rng, 6, false);
        c.word(&f, &word)?;
        // the log generators need an integer weight for the engine's x powers
        let wi = rat(rng.gen_range(-6i64..=6), 2);
        let g = random_field(&mut rng, &shape, wi);
        let word = random_word(&mut rng, 5, i % 2 == 0);
        c.word(&g, &word)?;
    }
    Ok(RealizationReport {
        d: model.d,
        samples,
        checks: c.checks,
        failures: c.failures,
    })
}
