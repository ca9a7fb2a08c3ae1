//! Integer-valued functions on posets and their integral with respect to
//! the Euler characteristic.
//!
//! A function `h` is written as a combination of prime-filter indicators,
//! `h = sum_x a_x * delta_{P>=x}`, with coefficients obtained by Möbius
//! inversion. Every prime filter has a minimum and therefore Euler
//! characteristic 1, so the integral is the sum of the coefficients. This
//! route works for any integer function. [`integrate_excursion`] is a second,
//! independent route for monotone non-negative functions that sums the Euler
//! characteristics of the excursion sets `{h >= i}`.

use crate::error::{Error, Result};
use crate::mobius::{euler_characteristic, MobiusTable};
use crate::poset::{ElementId, ElementSet, Poset};

/// An integer value for every element of some poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetFunction {
    values: Vec<i64>,
}

impl PosetFunction {
    pub fn new(p: &Poset, values: Vec<i64>) -> Result<PosetFunction> {
        if values.len() != p.len() {
            return Err(Error::SizeMismatch {
                expected: p.len(),
                actual: values.len(),
            });
        }
        Ok(PosetFunction { values })
    }

    pub(crate) fn from_values(values: Vec<i64>) -> PosetFunction {
        PosetFunction { values }
    }

    pub fn from_fn(p: &Poset, f: impl FnMut(ElementId) -> i64) -> PosetFunction {
        PosetFunction {
            values: p.elements().map(f).collect(),
        }
    }

    pub fn constant(p: &Poset, value: i64) -> PosetFunction {
        PosetFunction {
            values: vec![value; p.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, x: ElementId) -> i64 {
        self.values[x]
    }

    pub fn set(&mut self, x: ElementId, value: i64) {
        self.values[x] = value;
    }

    pub fn max(&self) -> Option<i64> {
        self.values.iter().copied().max()
    }

    /// Values at `parent_ids`, e.g. the mapping of an induced subposet.
    pub fn restrict(&self, parent_ids: &[ElementId]) -> PosetFunction {
        PosetFunction {
            values: parent_ids.iter().map(|&x| self.values[x]).collect(),
        }
    }

    /// `{x | h(x) >= level}`.
    pub fn excursion_set(&self, level: i64) -> ElementSet {
        let mut set = ElementSet::empty(self.values.len());
        for (x, &v) in self.values.iter().enumerate() {
            if v >= level {
                set.insert(x);
            }
        }
        set
    }

    /// `{x | h(x) != 0}`.
    pub fn support(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.values.len());
        for (x, &v) in self.values.iter().enumerate() {
            if v != 0 {
                set.insert(x);
            }
        }
        set
    }

    /// Fails with the first cover `lower < upper` where the value drops.
    pub fn check_monotone(&self, p: &Poset) -> Result<()> {
        self.check_len(p)?;
        for &(lower, upper) in p.covers() {
            if self.values[lower] > self.values[upper] {
                return Err(Error::NotMonotone { lower, upper });
            }
        }
        Ok(())
    }

    pub fn check_non_negative(&self) -> Result<()> {
        match self.values.iter().position(|&v| v < 0) {
            Some(element) => Err(Error::NegativeValues {
                element,
                value: self.values[element],
            }),
            None => Ok(()),
        }
    }

    pub fn is_monotone(&self, p: &Poset) -> bool {
        self.check_monotone(p).is_ok()
    }

    /// `a * self + b * other`, failing on overflow.
    pub fn linear_combination(
        &self,
        a: i64,
        other: &PosetFunction,
        b: i64,
    ) -> Result<PosetFunction> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| {
                a.checked_mul(x)
                    .zip(b.checked_mul(y))
                    .and_then(|(l, r)| l.checked_add(r))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<_>>()?;
        Ok(PosetFunction { values })
    }

    pub(crate) fn check_len(&self, p: &Poset) -> Result<()> {
        if self.values.len() == p.len() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: p.len(),
                actual: self.values.len(),
            })
        }
    }
}

/// The 0/1 function of `s`.
pub fn indicator(p: &Poset, s: &ElementSet) -> Result<PosetFunction> {
    p.check_set(s)?;
    Ok(PosetFunction::from_fn(p, |x| i64::from(s.contains(x))))
}

/// A function written as `sum_i a_i * delta_{Q_i}` with every `Q_i` a filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterLinearForm {
    terms: Vec<(i64, ElementSet)>,
}

impl FilterLinearForm {
    /// Validates that every term is a filter of `p`.
    pub fn new(p: &Poset, terms: Vec<(i64, ElementSet)>) -> Result<FilterLinearForm> {
        for (_, q) in &terms {
            p.check_set(q)?;
            if !p.is_filter(q) {
                let x = q
                    .iter()
                    .find(|&x| !p.up_set(x, false).is_subset(q))
                    .unwrap_or(0);
                let y = p.up_set(x, false).difference(q).iter().next().unwrap_or(x);
                return Err(Error::NotAFilter { lower: x, upper: y });
            }
        }
        Ok(FilterLinearForm { terms })
    }

    pub fn terms(&self) -> &[(i64, ElementSet)] {
        &self.terms
    }

    pub fn coefficient_sum(&self) -> Result<i64> {
        self.terms
            .iter()
            .try_fold(0i64, |acc, (a, _)| acc.checked_add(*a))
            .ok_or(Error::Overflow)
    }

    /// Pointwise value of the form.
    pub fn evaluate(&self, p: &Poset) -> Result<PosetFunction> {
        let mut values = vec![0i64; p.len()];
        for (a, q) in &self.terms {
            p.check_set(q)?;
            for x in q.iter() {
                values[x] = values[x].checked_add(*a).ok_or(Error::Overflow)?;
            }
        }
        PosetFunction::new(p, values)
    }

    /// `sum_i a_i * chi(Q_i)`, computing each Euler characteristic afresh.
    pub fn integrate(&self, p: &Poset) -> Result<i64> {
        let mut total = 0i64;
        for (a, q) in &self.terms {
            p.check_set(q)?;
            let chi = euler_characteristic(&p.induced_subposet(q).0)?;
            let term = a.checked_mul(chi).ok_or(Error::Overflow)?;
            total = total.checked_add(term).ok_or(Error::Overflow)?;
        }
        Ok(total)
    }
}

/// Prime-filter form of `h`: `a_x = sum_{y <= x} mu(y, x) * h(y)`, with
/// zero coefficients dropped.
pub fn mobius_coefficients(p: &Poset, h: &PosetFunction) -> Result<FilterLinearForm> {
    mobius_coefficients_with(p, &MobiusTable::new(p)?, h)
}

/// [`mobius_coefficients`] reusing a precomputed table for `p`.
pub fn mobius_coefficients_with(
    p: &Poset,
    mu: &MobiusTable,
    h: &PosetFunction,
) -> Result<FilterLinearForm> {
    h.check_len(p)?;
    if mu.len() != p.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            actual: mu.len(),
        });
    }
    let mut terms = Vec::new();
    for x in p.elements() {
        let mut a = 0i64;
        for y in p.down_set(x, false).iter() {
            let t = mu.get(y, x).checked_mul(h.get(y)).ok_or(Error::Overflow)?;
            a = a.checked_add(t).ok_or(Error::Overflow)?;
        }
        if a != 0 {
            terms.push((a, p.up_set(x, false)));
        }
    }
    Ok(FilterLinearForm { terms })
}

/// The Euler integral of `h` over `p`.
pub fn integrate(p: &Poset, h: &PosetFunction) -> Result<i64> {
    mobius_coefficients(p, h)?.coefficient_sum()
}

pub fn integrate_with(p: &Poset, mu: &MobiusTable, h: &PosetFunction) -> Result<i64> {
    mobius_coefficients_with(p, mu, h)?.coefficient_sum()
}

/// `chi({h >= i})` for `i = 1..=max h`. Requires `h` monotone and non-negative.
pub fn excursion_characteristics(p: &Poset, h: &PosetFunction) -> Result<Vec<i64>> {
    h.check_len(p)?;
    h.check_non_negative()?;
    h.check_monotone(p)?;
    let top = h.max().unwrap_or(0);
    (1..=top)
        .map(|level| euler_characteristic(&p.induced_subposet(&h.excursion_set(level)).0))
        .collect()
}

/// `sum_{i >= 1} chi({h >= i})`. Fails with [`Error::NotMonotone`] or
/// [`Error::NegativeValues`] when the excursion sets are not filters.
pub fn integrate_excursion(p: &Poset, h: &PosetFunction) -> Result<i64> {
    excursion_characteristics(p, h)?
        .into_iter()
        .try_fold(0i64, |acc, chi| acc.checked_add(chi))
        .ok_or(Error::Overflow)
}
