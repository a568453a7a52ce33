use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{from_f64, to_f64, Rational};
use crate::exact::{FixedPointPolynomial, IntegerPolynomial, Polynomial};

/// What a piecewise polynomial represents; decides values off the support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Zero outside the support.
    Density,
    /// Zero below the support, one above it.
    Cumulative,
}

/// Exact polynomial pieces on `[b_0, b_1), [b_1, b_2), ..., [b_{n-1}, b_n]`.
///
/// Right-continuous at interior breakpoints; the last piece also covers its
/// closed right end.
#[derive(Clone, Debug)]
pub struct PiecewisePolynomial {
    kind: Kind,
    breakpoints: Vec<Rational>,
    segments: Vec<Polynomial>,
    integer_forms: OnceLock<Vec<(IntegerPolynomial, FixedPointPolynomial)>>,
}

impl PartialEq for PiecewisePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.breakpoints == other.breakpoints
            && self.segments == other.segments
    }
}

impl PiecewisePolynomial {
    pub fn new(kind: Kind, breakpoints: Vec<Rational>, segments: Vec<Polynomial>) -> Result<Self> {
        if segments.is_empty() || breakpoints.len() != segments.len() + 1 {
            return Err(Error::Domain(format!(
                "{} breakpoints cannot bound {} segments",
                breakpoints.len(),
                segments.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(PiecewisePolynomial {
            kind,
            breakpoints,
            segments,
            integer_forms: OnceLock::new(),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Polynomial] {
        &self.segments
    }

    pub fn lower(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn upper(&self) -> &Rational {
        self.breakpoints.last().expect("at least two breakpoints")
    }

    /// Index of the piece holding `x`, assuming `x` lies in the support.
    fn segment_index(&self, x: &Rational) -> usize {
        let after = self.breakpoints.partition_point(|b| b <= x);
        after.saturating_sub(1).min(self.segments.len() - 1)
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &Rational) -> Rational {
        if x < self.lower() {
            return Rational::zero();
        }
        if x > self.upper() {
            return match self.kind {
                Kind::Density => Rational::zero(),
                Kind::Cumulative => Rational::one(),
            };
        }
        self.segments[self.segment_index(x)].eval(x)
    }

    /// Value at a double.
    ///
    /// Pieces can carry coefficients far beyond `f64` range whose
    /// cancellations leave an O(1) result, which floating-point Horner cannot
    /// reproduce. Each piece is first evaluated in fixed point with a proven
    /// error bound; when both ends of the enclosure round to the same double
    /// that double is returned, otherwise the piece is evaluated exactly at
    /// the (dyadic) value of `x`. Either way the result is the rounding of the
    /// exact value.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::Domain("cannot evaluate at NaN".into()));
        }
        let below = 0.0;
        let above = match self.kind {
            Kind::Density => 0.0,
            Kind::Cumulative => 1.0,
        };
        if x.is_infinite() {
            return Ok(if x < 0.0 { below } else { above });
        }
        let xr = from_f64(x)?;
        if &xr < self.lower() {
            return Ok(below);
        }
        if &xr > self.upper() {
            return Ok(above);
        }
        let forms = self.integer_forms.get_or_init(|| self.build_forms());
        let (exact, fixed) = &forms[self.segment_index(&xr)];
        let s = xr.denom().trailing_zeros().unwrap_or(0) as usize;
        if xr.numer().is_positive() {
            let (v, err) = fixed.eval_dyadic(xr.numer(), s);
            let unit = BigInt::one() << fixed.precision();
            let lo = to_f64(&Rational::new_raw(&v - &err, unit.clone()));
            let hi = to_f64(&Rational::new_raw(&v + &err, unit));
            if lo == hi {
                return Ok(lo);
            }
        }
        Ok(to_f64(&exact.eval_dyadic(xr.numer(), s)))
    }

    fn build_forms(&self) -> Vec<(IntegerPolynomial, FixedPointPolynomial)> {
        // enough bits to absorb the error growth of Horner up to |x|^d
        let reach = to_f64(self.upper()).abs().max(1.0).log2();
        self.segments
            .iter()
            .map(|p| {
                let exact = p.to_integer_form();
                let d = p.len() as f64;
                let prec = (d * reach + d.max(1.0).log2()).ceil() as usize + 140;
                let fixed = exact.to_fixed_point(prec);
                (exact, fixed)
            })
            .collect()
    }

    /// Piecewise derivative, reported as a density.
    pub fn derivative(&self) -> PiecewisePolynomial {
        PiecewisePolynomial {
            kind: Kind::Density,
            breakpoints: self.breakpoints.clone(),
            segments: self.segments.iter().map(Polynomial::derivative).collect(),
            integer_forms: OnceLock::new(),
        }
    }

    /// `∫ x^m p(x) dx` over the whole support, exactly.
    pub fn moment(&self, m: usize) -> Rational {
        self.segments
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(p, w)| p.shift(m).integrate(&w[0], &w[1]))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn integral(&self) -> Rational {
        self.moment(0)
    }
}
