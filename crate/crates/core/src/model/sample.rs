use rand::Rng;

use super::field::{DensityField, FieldKey};
use crate::arith::{int, rat, Rational};

/// Shape of randomized polynomial fields.
#[derive(Debug, Clone)]
pub struct SampleShape {
    pub n: usize,
    pub max_x_degree: u32,
    pub max_r_degree: u32,
    pub terms: usize,
}

impl SampleShape {
    pub fn new(n: usize) -> Self {
        SampleShape {
            n,
            max_x_degree: 4,
            max_r_degree: 2,
            terms: 4,
        }
    }

    pub fn boundary(mut self) -> Self {
        self.max_r_degree = 0;
        self
    }

    pub fn x_degree(mut self, k: u32) -> Self {
        self.max_x_degree = k;
        self
    }

    pub fn terms(mut self, k: usize) -> Self {
        self.terms = k;
        self
    }
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = loop {
        let v = rng.gen_range(-6i64..=6);
        if v != 0 {
            break v;
        }
    };
    rat(num, rng.gen_range(1i64..=3))
}

/// A random polynomial in `r, x_1..x_n` with small rational coefficients;
/// never the zero field.
pub fn random_field(rng: &mut impl Rng, shape: &SampleShape, weight: Rational) -> DensityField {
    loop {
        let mut f = DensityField::zero(shape.n, weight.clone());
        for _ in 0..shape.terms {
            let mut key = FieldKey::constant(shape.n);
            key.r = int(rng.gen_range(0..=shape.max_r_degree) as i64);
            let mut budget = rng.gen_range(0..=shape.max_x_degree);
            while budget > 0 && shape.n > 0 {
                key.mono[rng.gen_range(0..shape.n)] += 1;
                budget -= 1;
            }
            f.add_term(key, small_rational(rng));
        }
        if !f.is_zero() {
            return f;
        }
    }
}
