//! Moments of Haar-distributed matrix entries.

mod cosets;
mod direct;
mod spec;

use std::sync::Arc;

use crate::algebra::RationalFunction;
use crate::dim::Dim;
use crate::error::HaarError;
use crate::expr::Polynomial;
use crate::group::Group;
use crate::optimizer::{dispatch, Evaluation, Trace, TraceEvent};
use crate::weingarten::{build_table, TableStore, WeingartenTable};

pub use cosets::{delta_matching, delta_unitary, stabilizer_cosets, stabilizer_count, CosetElement, StabilizerCosets};
pub use direct::{type_histogram, DIRECT_BUDGET};
pub use spec::MomentSpec;

/// Evaluation settings.
#[derive(Clone, Debug)]
pub struct Options {
    /// Largest order accepted.
    pub max_n: usize,
    /// Unitary moments with `|S_I| |S_J|` above this use the list reduction
    /// instead of the double sum.
    pub parabolic_threshold: u64,
    /// When false, large unitary moments use the parabolic counts directly.
    pub unitary_reduction: bool,
    /// Share reduced counts between evaluations.
    pub memo: bool,
    /// Where Weingarten tables are cached on disk.
    pub store: Option<TableStore>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_n: 8,
            parabolic_threshold: 50_000,
            unitary_reduction: true,
            memo: true,
            store: None,
        }
    }
}

impl Options {
    pub(crate) fn table(
        &self,
        group: Group,
        n: usize,
        dim: Dim,
        trace: &mut Trace,
    ) -> Result<Arc<WeingartenTable>, HaarError> {
        trace.push(TraceEvent::TableFetch { group, n, dim });
        match &self.store {
            Some(store) => store.weingarten(group, n, dim),
            None => build_table(group, n, dim),
        }
    }
}

/// Rejects indices outside `1..=d` (`±1..=±d` for Sp) when `d` is fixed.
pub fn check_indices(spec: &MomentSpec, dim: Dim) -> Result<(), HaarError> {
    let Some(d) = dim.fixed() else {
        return Ok(());
    };
    let all = spec.i().iter().chain(spec.j()).chain(spec.i_bar()).chain(spec.j_bar());
    match all.copied().find(|v| v.unsigned_abs() > d as u64) {
        Some(index) => Err(HaarError::IndexOutOfRange { index, dim: d }),
        None => Ok(()),
    }
}

/// The moment as the full double sum over both stabilizer cosets.
pub fn integrate_direct(spec: &MomentSpec, dim: Dim) -> Result<RationalFunction, HaarError> {
    check_indices(spec, dim)?;
    let counts = type_histogram(spec)?;
    if counts.iter().next().is_none() {
        return Ok(if spec.order() == Some(0) {
            RationalFunction::one()
        } else {
            RationalFunction::zero()
        });
    }
    let table = build_table(spec.group(), counts.n(), dim)?;
    Ok(counts.contract(|rho| table.get(rho).clone()))
}

/// The moment with default [`Options`].
pub fn integrate_monomial(spec: &MomentSpec, dim: Dim) -> Result<RationalFunction, HaarError> {
    Ok(dispatch(spec, dim, &Options::default())?.value)
}

pub fn integrate_monomial_with(spec: &MomentSpec, dim: Dim, options: &Options) -> Result<Evaluation, HaarError> {
    dispatch(spec, dim, options)
}

/// Integrates a polynomial term by term.
pub fn integrate_polynomial(
    poly: &Polynomial,
    group: Group,
    dim: Dim,
    options: &Options,
) -> Result<Evaluation, HaarError> {
    let mut value = RationalFunction::zero();
    let mut trace = Trace::new();
    for (monomial, coeff) in poly.terms() {
        let spec = monomial.to_spec(group)?;
        let e = dispatch(&spec, dim, options)?;
        value = &value + &e.value.scale(coeff);
        trace.extend(e.trace);
    }
    Ok(Evaluation { value, trace })
}
