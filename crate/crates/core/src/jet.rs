//! Truncated Taylor jets for exact forward-mode derivatives.
//!
//! A [`Jet`] stores the Taylor coefficients `c_k = f^(k)(x0) / k!` for
//! `k = 0..JET_LEN`. Arithmetic and the elementary functions propagate all
//! coefficients, so every closed-form expression built from jets carries its
//! first four derivatives at no extra effort.
//!
//! Differentiating a jet ([`Jet::derivative`]) shifts the coefficients down
//! and marks the top slot as `NaN`. Coefficient `k` of any product, quotient
//! or composition only depends on input coefficients `<= k`, so the `NaN`
//! stays confined to the orders that are genuinely unknown.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

pub const JET_LEN: usize = 5;

const FACTORIAL: [f64; JET_LEN] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; JET_LEN],
}

impl Jet {
    pub const fn from_taylor(c: [f64; JET_LEN]) -> Self {
        Jet { c }
    }

    /// Jet of the independent variable itself at `x`.
    pub fn var(x: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = x;
        c[1] = 1.0;
        Jet { c }
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet { c }
    }

    /// Builds a jet from plain derivatives `[f, f', f'', ...]`.
    pub fn from_derivatives(d: [f64; JET_LEN]) -> Self {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            c[k] = d[k] / FACTORIAL[k];
        }
        Jet { c }
    }

    pub fn taylor(&self) -> &[f64; JET_LEN] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative (`k < JET_LEN`).
    pub fn nth(&self, k: usize) -> f64 {
        self.c[k] * FACTORIAL[k]
    }

    pub fn d1(&self) -> f64 {
        self.nth(1)
    }

    pub fn d2(&self) -> f64 {
        self.nth(2)
    }

    pub fn is_finite(&self) -> bool {
        self.c[..3].iter().all(|v| v.is_finite())
    }

    /// Jet of the derivative. The highest coefficient becomes unknown (`NaN`).
    pub fn derivative(&self) -> Self {
        let mut c = [f64::NAN; JET_LEN];
        for k in 0..JET_LEN - 1 {
            c[k] = (k as f64 + 1.0) * self.c[k + 1];
        }
        Jet { c }
    }

    /// Jet of the antiderivative whose value at the expansion point is `value`.
    pub fn integral(&self, value: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = value;
        for k in 1..JET_LEN {
            c[k] = self.c[k - 1] / k as f64;
        }
        Jet { c }
    }

    pub fn scale(self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Jet { c }
    }

    /// `g(self)` given `g^(k)` at `self.value()` for `k = 0..JET_LEN`.
    pub fn compose(self, outer: [f64; JET_LEN]) -> Self {
        let mut delta = self;
        delta.c[0] = 0.0;
        let mut out = [0.0; JET_LEN];
        out[0] = outer[0];
        let mut power = Jet::constant(1.0);
        for k in 1..JET_LEN {
            power = power * delta;
            let w = outer[k] / FACTORIAL[k];
            for (o, p) in out.iter_mut().zip(power.c.iter()) {
                *o += w * p;
            }
        }
        Jet { c: out }
    }

    pub fn recip(self) -> Self {
        Jet::constant(1.0) / self
    }

    pub fn exp(self) -> Self {
        let e = self.c[0].exp();
        self.compose([e; JET_LEN])
    }

    pub fn ln(self) -> Self {
        let x = self.c[0];
        self.compose([
            x.ln(),
            1.0 / x,
            -1.0 / (x * x),
            2.0 / (x * x * x),
            -6.0 / (x * x * x * x),
        ])
    }

    pub fn powf(self, p: f64) -> Self {
        let x = self.c[0];
        let mut d = [0.0; JET_LEN];
        let mut falling = 1.0;
        for (k, slot) in d.iter_mut().enumerate() {
            *slot = falling * x.powf(p - k as f64);
            falling *= p - k as f64;
        }
        self.compose(d)
    }

    pub fn powi(self, n: i32) -> Self {
        match n {
            0 => Jet::constant(1.0),
            n if n < 0 => self.powi(-n).recip(),
            n => {
                let mut acc = self;
                for _ in 1..n {
                    acc = acc * self;
                }
                acc
            }
        }
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn tan(self) -> Self {
        self.sin() / self.cos()
    }

    pub fn cot(self) -> Self {
        self.cos() / self.sin()
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.compose([s, c, s, c, s])
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.compose([c, s, c, s, c])
    }

    pub fn tanh(self) -> Self {
        self.sinh() / self.cosh()
    }

    pub fn atan(self) -> Self {
        let x = self.c[0];
        let q = 1.0 + x * x;
        self.compose([
            x.atan(),
            1.0 / q,
            -2.0 * x / (q * q),
            (6.0 * x * x - 2.0) / (q * q * q),
            24.0 * x * (1.0 - x * x) / (q * q * q * q),
        ])
    }

    pub fn abs(self) -> Self {
        if self.c[0] < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
        Jet { c }
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut s = 0.0;
            for j in 0..=k {
                s += self.c[j] * rhs.c[k - j];
            }
            c[k] = s;
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let b0 = rhs.c[0];
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= rhs.c[j] * c[k - j];
            }
            c[k] = s / b0;
        }
        Jet { c }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut c = self.c;
        c[0] += rhs;
        Jet { c }
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + (-rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        (-rhs) + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        Jet::constant(self) / rhs
    }
}
