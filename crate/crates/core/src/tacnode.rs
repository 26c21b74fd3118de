//! Truncated power series over the Gaussian rationals and the class of a
//! difference of sections on a good tacnodal degeneration
//! `y² = x²(x² + 2bx + c)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result};

pub type Gaussian = Complex<BigRational>;

pub const DEFAULT_TRUNCATION: usize = 16;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 20_240_601;

fn gi(re: i64, im: i64) -> Gaussian {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

fn rat_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Exact square root in `ℚ(i)` with nonnegative real part, ties broken by
/// nonnegative imaginary part.
pub fn gaussian_sqrt(z: &Gaussian) -> Option<Gaussian> {
    let two = BigRational::from_integer(BigInt::from(2));
    let modulus = rat_sqrt(&(&z.re * &z.re + &z.im * &z.im))?;
    let re = rat_sqrt(&((&modulus + &z.re) / &two))?;
    let mut im = rat_sqrt(&((&modulus - &z.re) / &two))?;
    if z.im.is_negative() {
        im = -im;
    }
    let root = Complex::new(re, im);
    Some(normalize_branch(root))
}

fn normalize_branch(w: Gaussian) -> Gaussian {
    if w.re.is_negative() || (w.re.is_zero() && w.im.is_negative()) {
        -w
    } else {
        w
    }
}

/// Power series known through degree `precision − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Gaussian>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Gaussian>, precision: usize) -> Self {
        coeffs.resize(precision, Gaussian::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], precision: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| gi(c, 0)).collect(), precision)
    }

    pub fn constant(c: Gaussian, precision: usize) -> Self {
        Self::new(vec![c], precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> Gaussian {
        self.coeffs.get(i).cloned().unwrap_or_else(Gaussian::zero)
    }

    pub fn coeffs(&self) -> &[Gaussian] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` if zero through the precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs[..n.min(self.precision())].to_vec(), n.min(self.precision()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        Self::new((0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, s: &Gaussian) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (pa, pb) = (self.precision(), o.precision());
        let oa = self.order().unwrap_or(pa);
        let ob = o.order().unwrap_or(pb);
        let n = (pa + ob).min(pb + oa);
        let mut out = vec![Gaussian::zero(); n];
        for i in 0..pa.min(n) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..pb.min(n - i) {
                out[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        Self::new(out, n)
    }

    /// `self / o`, dividing out the common power of `t`; the precision drops
    /// by the order of `o`.
    pub fn div(&self, o: &Self) -> Result<Self> {
        let m = o.order().ok_or_else(|| Error::invalid("division by a series that vanishes to the precision"))?;
        if self.coeffs.iter().take(m).any(|c| !c.is_zero()) {
            return Err(Error::invalid("quotient is not a power series"));
        }
        let n = self.precision().min(o.precision()).checked_sub(m).filter(|&n| n > 0).ok_or_else(|| Error::invalid("no precision left after division"))?;
        let a = &self.coeffs[m..m + n];
        let b = &o.coeffs[m..m + n];
        let inv0 = b[0].inv();
        let mut q: Vec<Gaussian> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = a[i].clone();
            for j in 1..=i {
                acc -= &b[j] * &q[i - j];
            }
            q.push(acc * &inv0);
        }
        Ok(Self::new(q, n))
    }

    pub fn derivative(&self) -> Self {
        let n = self.precision().saturating_sub(1);
        Self::new((1..=n).map(|i| self.coeffs[i].clone() * gi(i as i64, 0)).collect(), n)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = gaussian_to_string(c);
            terms.push(match i {
                0 => coef,
                1 => format!("({coef})t"),
                _ => format!("({coef})t^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(t^{})", terms.join(" + "), self.precision())
    }
}

pub fn gaussian_to_string(c: &Gaussian) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) => format!("{}i", c.im),
        _ => format!("{}{}{}i", c.re, if c.im.is_negative() { "-" } else { "+" }, c.im.abs()),
    }
}

/// Square root of a series of even order with a square leading coefficient.
/// The precision drops by half the order.
pub fn series_sqrt(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = s.order().ok_or_else(|| Error::invalid("square root of a vanishing series"))?;
    if order % 2 == 1 {
        return Err(Error::invalid(format!("square root of a series of odd order {order}")));
    }
    let m = order / 2;
    let u = &s.coeffs[order..];
    let n = u.len();
    let s0 = gaussian_sqrt(&u[0]).ok_or_else(|| Error::invalid("leading coefficient is not a square in Q(i)"))?;
    let inv = (s0.clone() * gi(2, 0)).inv();
    let mut r = vec![s0];
    for i in 1..n {
        let mut acc = u[i].clone();
        for j in 1..i {
            acc -= &r[j] * &r[i - j];
        }
        r.push(acc * &inv);
    }
    let mut coeffs = vec![Gaussian::zero(); m];
    coeffs.extend(r);
    let p = m + n;
    Ok(TruncatedSeries::new(coeffs, p))
}

#[derive(Clone, Debug)]
pub struct TacnodalFamily {
    pub b: TruncatedSeries,
    pub c: TruncatedSeries,
    pub k: usize,
    /// `u, v` with `x² + 2bx + c = (x − u)(x − v)` when generated.
    pub roots: Option<(TruncatedSeries, TruncatedSeries)>,
}

impl TacnodalFamily {
    pub fn new(b: TruncatedSeries, c: TruncatedSeries) -> Result<Self> {
        let oc = c.order().ok_or_else(|| Error::invalid("c vanishes"))?;
        let b2 = b.mul(&b);
        let ob2 = b2.order().unwrap_or(b2.precision());
        if oc == 0 || ob2 <= oc {
            return Err(Error::invalid(format!("not good tacnodal: ord(b^2) = {ob2}, ord(c) = {oc}")));
        }
        let fam = TacnodalFamily { b, c, k: oc / 2, roots: None };
        if fam.d().order().is_none() {
            return Err(Error::invalid("d = b^2 - c vanishes"));
        }
        Ok(fam)
    }

    pub fn d(&self) -> TruncatedSeries {
        self.b.mul(&self.b).sub(&self.c)
    }

    pub fn precision(&self) -> usize {
        self.b.precision().min(self.c.precision())
    }

    pub fn sqrt_c(&self) -> Result<TruncatedSeries> {
        series_sqrt(&self.c).map_err(|e| Error::invalid(format!("family is not split: {e}")))
    }
}

#[derive(Clone, Debug)]
pub struct CurveSection {
    pub x: TruncatedSeries,
    pub y: TruncatedSeries,
    pub branch: i8,
}

fn quadratic(f: &TacnodalFamily, x: &TruncatedSeries) -> TruncatedSeries {
    let two_b = f.b.scale(&gi(2, 0));
    x.mul(x).add(&two_b.mul(x)).add(&f.c)
}

/// The section over `x` with `y ≡ branch · x² mod t`.
pub fn make_section(f: &TacnodalFamily, x: &TruncatedSeries, branch: i8) -> Result<CurveSection> {
    if x.coeff(0).is_zero() {
        return Err(Error::invalid("x(0) = 0: the section passes through the singular point"));
    }
    if branch != 1 && branch != -1 {
        return Err(Error::invalid("branch must be +1 or -1"));
    }
    let mut root = series_sqrt(&quadratic(f, x))?;
    if root.coeff(0) != x.coeff(0) {
        root = root.neg();
    }
    let y = x.mul(&root).scale(&gi(i64::from(branch), 0));
    Ok(CurveSection { x: x.clone(), y, branch })
}

/// `y² − x²(x² + 2bx + c)`; zero through the precision for a valid section.
pub fn section_residual(f: &TacnodalFamily, s: &CurveSection) -> TruncatedSeries {
    s.y.mul(&s.y).sub(&s.x.mul(&s.x).mul(&quadratic(f, &s.x)))
}

/// `u = (x² + y + x√c) / (x² + y − x√c)` evaluated on a section.
pub fn u_coordinate(f: &TacnodalFamily, s: &CurveSection) -> Result<TruncatedSeries> {
    let rc = f.sqrt_c()?;
    let base = s.x.mul(&s.x).add(&s.y);
    let xr = s.x.mul(&rc);
    base.add(&xr).div(&base.sub(&xr))
}

/// Image of `(σ_1) − (σ_2)` under the coordinate `u`.
pub fn class_ratio(f: &TacnodalFamily, s1: &CurveSection, s2: &CurveSection) -> Result<TruncatedSeries> {
    u_coordinate(f, s1)?.div(&u_coordinate(f, s2)?)
}

const POLY_DEGREE: usize = 4;

fn small_poly(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-3..=3)).collect()
}

/// `u = α t^k (1 + t p)`, `v = −α t^k (1 + t q)`, `b = −(u + v)/2`, `c = uv`.
/// The random data do not depend on `precision`, so raising it only extends
/// the same family.
pub fn random_family(seed: u64, k: usize, precision: usize) -> Result<TacnodalFamily> {
    if k == 0 || precision <= 4 * k {
        return Err(Error::invalid(format!("need k >= 1 and truncation > 4k (k = {k}, truncation = {precision})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alpha = 0;
    while alpha == 0 {
        alpha = rng.gen_range(-3..=3);
    }
    let p = small_poly(&mut rng, POLY_DEGREE);
    let mut q = small_poly(&mut rng, POLY_DEGREE);
    if p == q {
        q[0] += 1;
    }
    let shifted = |poly: &[i64], a: i64| -> TruncatedSeries {
        let mut c = vec![0; k];
        c.push(a);
        c.extend(poly.iter().map(|x| x * a));
        TruncatedSeries::from_ints(&c, precision)
    };
    let u = shifted(&p, alpha);
    let v = shifted(&q, -alpha);
    let half = gi(1, 0) / gi(2, 0);
    let b = u.add(&v).scale(&half).neg();
    let c = u.mul(&v);
    let mut f = TacnodalFamily::new(b, c)?;
    f.roots = Some((u, v));
    Ok(f)
}

/// A random `x` with nonzero constant term, independent of the precision.
pub fn random_x(rng: &mut ChaCha8Rng, precision: usize) -> TruncatedSeries {
    let mut x0 = 0;
    while x0 == 0 {
        x0 = rng.gen_range(-4..=4);
    }
    let mut c = vec![x0];
    c.extend(small_poly(rng, POLY_DEGREE - 1));
    TruncatedSeries::from_ints(&c, precision)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialExample {
    pub seed: u64,
    pub k: usize,
    pub branches: (i8, i8),
    pub ratio_at_zero: String,
    pub expected: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub trials: usize,
    pub failures: usize,
    pub examples: Vec<TrialExample>,
}

/// Checks `class_ratio(0) = ε_1 ε_2` on `trials` random families.
pub fn run_trials(seed: u64, trials: usize, precision: usize, k: Option<usize>) -> Result<TrialReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kmax = (precision - 1) / 4;
    if kmax == 0 || k.is_some_and(|k| k == 0 || k > kmax) {
        return Err(Error::invalid(format!("truncation {precision} too small for the requested k")));
    }
    let mut failures = 0;
    let mut examples = Vec::new();
    for _ in 0..trials {
        let fam_seed: u64 = rng.gen();
        let kk = k.unwrap_or_else(|| rng.gen_range(1..=kmax.min(3)));
        let f = random_family(fam_seed, kk, precision)?;
        let branches: (i8, i8) = (if rng.gen() { 1 } else { -1 }, if rng.gen() { 1 } else { -1 });
        let s1 = make_section(&f, &random_x(&mut rng, precision), branches.0)?;
        let s2 = make_section(&f, &random_x(&mut rng, precision), branches.1)?;
        let ratio = class_ratio(&f, &s1, &s2)?;
        let expected = i64::from(branches.0 * branches.1);
        let at0 = ratio.coeff(0);
        if ratio.precision() == 0 || at0 != gi(expected, 0) {
            failures += 1;
        }
        if examples.len() < 5 {
            examples.push(TrialExample {
                seed: fam_seed,
                k: kk,
                branches,
                ratio_at_zero: gaussian_to_string(&at0),
                expected,
            });
        }
    }
    Ok(TrialReport { trials, failures, examples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Gaussian {
        Complex::new(BigRational::new(n.into(), d.into()), BigRational::zero())
    }

    #[test]
    fn sqrt_examples() {
        let s = series_sqrt(&TruncatedSeries::from_ints(&[1, 1], 4)).unwrap();
        assert_eq!(s.coeffs()[..3], [q(1, 1), q(1, 2), q(-1, 8)]);
        let s = series_sqrt(&TruncatedSeries::from_ints(&[0, 0, 4], 6)).unwrap();
        assert_eq!(s.coeff(1), gi(2, 0));
        assert_eq!(s.order(), Some(1));
        let s = series_sqrt(&TruncatedSeries::from_ints(&[0, 0, -1], 6)).unwrap();
        assert_eq!(s.coeff(1), gi(0, 1));
        assert!(series_sqrt(&TruncatedSeries::from_ints(&[0, 1], 4)).is_err());
        assert!(series_sqrt(&TruncatedSeries::from_ints(&[2], 4)).is_err());
        assert_eq!(gaussian_sqrt(&gi(-4, 0)), Some(gi(0, 2)));
        assert_eq!(gaussian_sqrt(&gi(3, 4)), Some(gi(2, 1)));
    }

    #[test]
    fn precision_tracking() {
        let s = TruncatedSeries::from_ints(&[0, 0, 4, 1], 8);
        assert_eq!(series_sqrt(&s).unwrap().precision(), 7);
        let a = TruncatedSeries::from_ints(&[0, 1, 1], 8);
        assert_eq!(a.div(&a).unwrap(), TruncatedSeries::from_ints(&[1], 7));
        assert!(TruncatedSeries::from_ints(&[1], 8).div(&a).is_err());
        assert_eq!(TruncatedSeries::from_ints(&[1, 2, 3], 3).derivative(), TruncatedSeries::from_ints(&[2, 6], 2));
    }

    #[test]
    fn sections() {
        let f = random_family(7, 1, 16).unwrap();
        assert_eq!(f.c.order(), Some(2));
        assert!(f.b.order().unwrap() >= 2);
        let one = TruncatedSeries::from_ints(&[1], 16);
        assert_eq!(make_section(&f, &one, 1).unwrap().y.coeff(0), gi(1, 0));
        assert_eq!(make_section(&f, &one, -1).unwrap().y.coeff(0), gi(-1, 0));
        let x = TruncatedSeries::from_ints(&[2, 1], 16);
        let s = make_section(&f, &x, 1).unwrap();
        assert_eq!(s.y.coeff(0), gi(4, 0));
        assert_eq!(section_residual(&f, &s).order(), None);
        assert!(make_section(&f, &TruncatedSeries::from_ints(&[0, 1], 16), 1).is_err());
        let (u, v) = f.roots.clone().unwrap();
        let half = u.sub(&v).scale(&(gi(1, 0) / gi(2, 0)));
        let rd = series_sqrt(&f.d()).unwrap();
        assert!(rd == half.truncate(rd.precision()) || rd == half.neg().truncate(rd.precision()));
    }

    #[test]
    fn ratio_signs() {
        let f = random_family(11, 2, 16).unwrap();
        let x1 = TruncatedSeries::from_ints(&[1, 2], 16);
        let x2 = TruncatedSeries::from_ints(&[-3, 0, 1], 16);
        let (p1, m2) = (make_section(&f, &x1, 1).unwrap(), make_section(&f, &x2, -1).unwrap());
        let p2 = make_section(&f, &x2, 1).unwrap();
        assert_eq!(class_ratio(&f, &p1, &p1).unwrap(), TruncatedSeries::from_ints(&[1], class_ratio(&f, &p1, &p1).unwrap().precision()));
        assert_eq!(class_ratio(&f, &p1, &p2).unwrap().coeff(0), gi(1, 0));
        assert_eq!(class_ratio(&f, &p1, &m2).unwrap().coeff(0), gi(-1, 0));
        assert!(random_family(1, 4, 16).is_err());
    }

    #[test]
    fn trials_pass() {
        let r = run_trials(DEFAULT_SEED, 20, DEFAULT_TRUNCATION, None).unwrap();
        assert_eq!(r.failures, 0);
    }
}
