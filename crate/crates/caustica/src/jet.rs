//! Truncated bivariate Taylor arithmetic.
//!
//! A [`Jet`] of order `K` at a base point carries the scaled partial
//! derivatives `coeff(i, j) = d^{i+j} h / du^i dv^j / (i! j!)` for
//! `i + j <= K`. Every derivative consumed by the curvature formulas is read
//! off a jet coefficient; nothing in the crate differentiates symbolically
//! or by finite differences.

use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Parameter-space point.
pub type Point = (f64, f64);

fn tri_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

fn tri_idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Truncated bivariate Taylor expansion of a scalar at a base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    base: Point,
    order: usize,
    coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(base: Point, order: usize, value: f64) -> Jet {
        let mut coeffs = vec![0.0; tri_len(order)];
        coeffs[0] = value;
        Jet { base, order, coeffs }
    }

    /// The coordinate function `u` expanded at the base point.
    pub fn variable_u(base: Point, order: usize) -> Jet {
        let mut j = Jet::constant(base, order, base.0);
        if order >= 1 {
            j.coeffs[tri_idx(1, 0)] = 1.0;
        }
        j
    }

    /// The coordinate function `v` expanded at the base point.
    pub fn variable_v(base: Point, order: usize) -> Jet {
        let mut j = Jet::constant(base, order, base.1);
        if order >= 1 {
            j.coeffs[tri_idx(0, 1)] = 1.0;
        }
        j
    }

    pub fn base(&self) -> Point {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Value at the base point (the (0,0) coefficient).
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Scaled Taylor coefficient, zero when `i + j` exceeds the order.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.coeffs[tri_idx(i, j)]
        }
    }

    /// The true partial derivative `d^{i+j} h / du^i dv^j` at the base point.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        let mut fact = 1.0;
        for k in 2..=i {
            fact *= k as f64;
        }
        for k in 2..=j {
            fact *= k as f64;
        }
        self.coeff(i, j) * fact
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Truncate to a lower order (no-op if already at or below it).
    pub fn truncated(&self, order: usize) -> Jet {
        if order >= self.order {
            return self.clone();
        }
        Jet {
            base: self.base,
            order,
            coeffs: self.coeffs[..tri_len(order)].to_vec(),
        }
    }

    fn check_base(&self, other: &Jet) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BasePointMismatch(
                self.base.0,
                self.base.1,
                other.base.0,
                other.base.1,
            ));
        }
        Ok(())
    }

    fn zip(&self, other: &Jet, op: impl Fn(f64, f64) -> f64) -> Result<Jet> {
        self.check_base(other)?;
        let order = self.order.min(other.order);
        let mut coeffs = vec![0.0; tri_len(order)];
        for d in 0..=order {
            for j in 0..=d {
                let i = d - j;
                coeffs[tri_idx(i, j)] = op(self.coeff(i, j), other.coeff(i, j));
            }
        }
        Ok(Jet { base: self.base, order, coeffs })
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            base: self.base,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: f64) -> Jet {
        let mut j = self.clone();
        j.coeffs[0] += s;
        j
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_base(other)?;
        let order = self.order.min(other.order);
        let mut coeffs = vec![0.0; tri_len(order)];
        for d1 in 0..=order {
            for j1 in 0..=d1 {
                let i1 = d1 - j1;
                let a = self.coeff(i1, j1);
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(order - d1) {
                    for j2 in 0..=d2 {
                        let i2 = d2 - j2;
                        let b = other.coeff(i2, j2);
                        if b != 0.0 {
                            coeffs[tri_idx(i1 + i2, j1 + j2)] += a * b;
                        }
                    }
                }
            }
        }
        Ok(Jet { base: self.base, order, coeffs })
    }

    /// Compose an analytic function with this jet: given the Taylor
    /// coefficients `series[n] = g^(n)(h0)/n!` of `g` at the jet's value,
    /// returns the jet of `g(h)`. The nilpotent part has no constant term, so
    /// `order + 1` series terms are exact.
    fn analytic(&self, series: &[f64]) -> Jet {
        let mut x = self.clone();
        x.coeffs[0] = 0.0;
        let mut acc = Jet::constant(self.base, self.order, series[0]);
        let mut term = Jet::constant(self.base, self.order, 1.0);
        for c in series.iter().skip(1) {
            // cannot fail: same base and order by construction
            term = term.mul(&x).unwrap();
            acc = acc.add(&term.scale(*c)).unwrap();
        }
        acc
    }

    pub fn recip(&self) -> Result<Jet> {
        let a0 = self.value();
        if a0 == 0.0 {
            return Err(Error::JetDivisionByZero);
        }
        let mut series = vec![0.0; self.order + 1];
        let mut c = 1.0 / a0;
        for s in series.iter_mut() {
            *s = c;
            c *= -1.0 / a0;
        }
        Ok(self.analytic(&series))
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        self.mul(&other.recip()?)
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.value();
        if a0 <= 0.0 {
            return Err(Error::JetSqrtNonPositive(a0));
        }
        let mut series = vec![0.0; self.order + 1];
        let s0 = a0.sqrt();
        // binomial series for (a0 + x)^(1/2) = s0 * (1 + x/a0)^(1/2)
        let mut c = s0;
        for (n, s) in series.iter_mut().enumerate() {
            *s = c;
            let nf = n as f64;
            c *= (0.5 - nf) / (nf + 1.0) / a0;
        }
        Ok(self.analytic(&series))
    }

    pub fn exp(&self) -> Jet {
        let e0 = self.value().exp();
        let mut series = vec![0.0; self.order + 1];
        let mut c = e0;
        for (n, s) in series.iter_mut().enumerate() {
            *s = c;
            c /= n as f64 + 1.0;
        }
        self.analytic(&series)
    }

    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.value();
        if a0 <= 0.0 {
            return Err(Error::JetLogNonPositive(a0));
        }
        let mut series = vec![0.0; self.order + 1];
        series[0] = a0.ln();
        let mut c = 1.0 / a0;
        for n in 1..=self.order {
            series[n] = c / n as f64;
            c *= -1.0 / a0;
        }
        Ok(self.analytic(&series))
    }

    pub fn sin(&self) -> Jet {
        self.trig(true)
    }

    pub fn cos(&self) -> Jet {
        self.trig(false)
    }

    fn trig(&self, sine: bool) -> Jet {
        let a0 = self.value();
        let (s0, c0) = (a0.sin(), a0.cos());
        let cycle = if sine { [s0, c0, -s0, -c0] } else { [c0, -s0, -c0, s0] };
        let mut series = vec![0.0; self.order + 1];
        let mut fact = 1.0;
        for (n, s) in series.iter_mut().enumerate() {
            if n > 1 {
                fact *= n as f64;
            }
            *s = cycle[n % 4] / fact;
        }
        self.analytic(&series)
    }

    /// Integer power by binary exponentiation; negative exponents go through
    /// `recip` and require a nonzero constant term.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut acc = Jet::constant(self.base, self.order, 1.0);
        let mut b = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Partial derivative in `u`; the result is one order lower.
    pub fn deriv_u(&self) -> Result<Jet> {
        self.deriv(true)
    }

    /// Partial derivative in `v`; the result is one order lower.
    pub fn deriv_v(&self) -> Result<Jet> {
        self.deriv(false)
    }

    fn deriv(&self, by_u: bool) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder { need: 1, have: 0 });
        }
        let order = self.order - 1;
        let mut coeffs = vec![0.0; tri_len(order)];
        for d in 0..=order {
            for j in 0..=d {
                let i = d - j;
                coeffs[tri_idx(i, j)] = if by_u {
                    self.coeff(i + 1, j) * (i + 1) as f64
                } else {
                    self.coeff(i, j + 1) * (j + 1) as f64
                };
            }
        }
        Ok(Jet { base: self.base, order, coeffs })
    }

    /// Transpose the parameter roles `(u, v) -> (v, u)`.
    ///
    /// Relabels coefficients `(i, j) -> (j, i)` and swaps the base point
    /// components; used to mirror branch-1 curvature-line formulas onto
    /// branch 2.
    pub fn transposed(&self) -> Jet {
        let mut coeffs = vec![0.0; tri_len(self.order)];
        for d in 0..=self.order {
            for j in 0..=d {
                let i = d - j;
                coeffs[tri_idx(j, i)] = self.coeff(i, j);
            }
        }
        Jet {
            base: (self.base.1, self.base.0),
            order: self.order,
            coeffs,
        }
    }

    /// Lowest total degree carrying a coefficient above the graded tolerance,
    /// or `None` when all coefficients vanish to jet order.
    ///
    /// The tolerance for degree `d` is scaled by the largest coefficient of
    /// total degree `<= d`, since coefficients of composed jets accumulate
    /// roundoff with degree.
    pub fn leading_degree(&self, tol: &Tolerances) -> Option<usize> {
        let mut running_max: f64 = 0.0;
        for d in 0..=self.order {
            let mut deg_max: f64 = 0.0;
            for j in 0..=d {
                deg_max = deg_max.max(self.coeff(d - j, j).abs());
            }
            running_max = running_max.max(deg_max);
            if deg_max > tol.tau * running_max.max(1.0) {
                return Some(d);
            }
        }
        None
    }
}

/// A 3-vector of jets sharing base point and order.
#[derive(Clone, Debug, PartialEq)]
pub struct JetVec3 {
    pub x: Jet,
    pub y: Jet,
    pub z: Jet,
}

impl JetVec3 {
    pub fn new(x: Jet, y: Jet, z: Jet) -> Result<JetVec3> {
        x.check_base(&y)?;
        x.check_base(&z)?;
        Ok(JetVec3 { x, y, z })
    }

    pub fn base(&self) -> Point {
        self.x.base()
    }

    pub fn order(&self) -> usize {
        self.x.order().min(self.y.order()).min(self.z.order())
    }

    pub fn value(&self) -> [f64; 3] {
        [self.x.value(), self.y.value(), self.z.value()]
    }

    pub fn map(&self, f: impl Fn(&Jet) -> Jet) -> JetVec3 {
        JetVec3 { x: f(&self.x), y: f(&self.y), z: f(&self.z) }
    }

    fn zip(&self, o: &JetVec3, f: impl Fn(&Jet, &Jet) -> Result<Jet>) -> Result<JetVec3> {
        Ok(JetVec3 {
            x: f(&self.x, &o.x)?,
            y: f(&self.y, &o.y)?,
            z: f(&self.z, &o.z)?,
        })
    }

    pub fn add(&self, o: &JetVec3) -> Result<JetVec3> {
        self.zip(o, Jet::add)
    }

    pub fn sub(&self, o: &JetVec3) -> Result<JetVec3> {
        self.zip(o, Jet::sub)
    }

    pub fn scale(&self, s: &Jet) -> Result<JetVec3> {
        self.zip_scalar(|c| c.mul(s))
    }

    pub fn scale_f64(&self, s: f64) -> JetVec3 {
        self.map(|c| c.scale(s))
    }

    fn zip_scalar(&self, f: impl Fn(&Jet) -> Result<Jet>) -> Result<JetVec3> {
        Ok(JetVec3 { x: f(&self.x)?, y: f(&self.y)?, z: f(&self.z)? })
    }

    pub fn dot(&self, o: &JetVec3) -> Result<Jet> {
        let a = self.x.mul(&o.x)?;
        let b = self.y.mul(&o.y)?;
        let c = self.z.mul(&o.z)?;
        a.add(&b)?.add(&c)
    }

    pub fn cross(&self, o: &JetVec3) -> Result<JetVec3> {
        Ok(JetVec3 {
            x: self.y.mul(&o.z)?.sub(&self.z.mul(&o.y)?)?,
            y: self.z.mul(&o.x)?.sub(&self.x.mul(&o.z)?)?,
            z: self.x.mul(&o.y)?.sub(&self.y.mul(&o.x)?)?,
        })
    }

    pub fn norm(&self) -> Result<Jet> {
        self.dot(self)?.sqrt()
    }

    pub fn normalized(&self) -> Result<JetVec3> {
        let n = self.norm()?.recip()?;
        self.scale(&n)
    }

    pub fn deriv_u(&self) -> Result<JetVec3> {
        self.zip_scalar(Jet::deriv_u)
    }

    pub fn deriv_v(&self) -> Result<JetVec3> {
        self.zip_scalar(Jet::deriv_v)
    }

    /// Scalar triple product det(a, b, c).
    pub fn det3(a: &JetVec3, b: &JetVec3, c: &JetVec3) -> Result<Jet> {
        a.cross(b)?.dot(c)
    }

    pub fn transposed(&self) -> JetVec3 {
        self.map(Jet::transposed)
    }
}

/// First-order directional derivative `w^1 h_u + w^2 h_v` of a scalar field;
/// the coefficient fields are themselves jets, so iterating this yields the
/// higher directional derivatives of the singularity criteria.
pub fn directional_derivative(h: &Jet, w: &[Jet; 2]) -> Result<Jet> {
    if h.order() == 0 {
        return Err(Error::InsufficientOrder { need: 1, have: 0 });
    }
    let hu = h.deriv_u()?;
    let hv = h.deriv_v()?;
    w[0].mul(&hu)?.add(&w[1].mul(&hv)?)
}

/// Directional derivative of a vector field along a jet-coefficient field.
pub fn directional_derivative_vec(h: &JetVec3, w: &[Jet; 2]) -> Result<JetVec3> {
    let hu = h.deriv_u()?;
    let hv = h.deriv_v()?;
    hu.scale(&w[0])?.add(&hv.scale(&w[1])?)
}
