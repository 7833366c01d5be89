use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{factorial, RationalFunction};
use crate::combinatorics::partitions_of;
use crate::counts::ClassCounts;
use crate::dim::Dim;
use crate::error::HaarError;
use crate::group::Group;
use crate::integrator::{check_indices, stabilizer_count, type_histogram, MomentSpec, Options};
use crate::symfun::{character_table, dimension, schur_at_one};
use crate::weingarten::WeingartenTable;

use super::graph::GraphKey;
use super::memo;
use super::normalize::{multiplicity_partition, normalize};
use super::orthogonal::{independent_blocks_counts, one_list_counts, one_list_key, one_row_counts, orthogonal_list_reduction};
use super::trace::{Strategy, Trace, TraceEvent};
use super::unitary::{column_matching, leaf_counts, parabolic_character_sums, unitary_graph_key, unitary_list_reduction};

/// A value with the record of how it was obtained.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: RationalFunction,
    pub trace: Trace,
}

/// Evaluates a moment by the cheapest applicable method.
///
/// Zeros forced by the degree or by the index multisets are returned before
/// any table is touched. Otherwise the moment is normalized and then:
///
/// * both stabilizers trivial: a single Weingarten value;
/// * U: the double sum while `|S_I| |S_J|` is at most
///   [`Options::parabolic_threshold`], above it the list reduction with
///   memoized leaves (or, if disabled, the parabolic counts), both
///   regrouped by characters;
/// * O: one row, then independent blocks, then the list reduction with
///   memoized one-list counts;
/// * Sp: the double sum.
pub fn dispatch(spec: &MomentSpec, dim: Dim, options: &Options) -> Result<Evaluation, HaarError> {
    let mut trace = Trace::new();
    trace.push(TraceEvent::Input(spec.to_string()));
    check_indices(spec, dim)?;
    let group = spec.group();
    let Some(n) = spec.order() else {
        return Ok(vanish(trace, "degree"));
    };
    let left = stabilizer_count(group, spec.i(), spec.i_bar());
    let right = stabilizer_count(group, spec.j(), spec.j_bar());
    if left == BigInt::ZERO || right == BigInt::ZERO {
        return Ok(vanish(trace, "index-multisets"));
    }
    if n == 0 {
        trace.push(TraceEvent::Strategy(Strategy::Single));
        return Ok(Evaluation {
            value: RationalFunction::one(),
            trace,
        });
    }
    if n > options.max_n {
        return Err(HaarError::Budget(format!("moment of order {n} exceeds max-n {}", options.max_n)));
    }
    let norm = normalize(spec);
    let s = norm.spec().clone();
    trace.push(TraceEvent::Normalized(s.to_string()));
    let pairs = &left * &right;

    if pairs.is_one() {
        trace.push(TraceEvent::Strategy(Strategy::Single));
        let counts = type_histogram(&s)?;
        let value = contract(&counts, group, dim, options, &mut trace)?;
        return Ok(Evaluation { value, trace });
    }

    let value = match group {
        Group::Unitary => {
            if pairs <= BigInt::from(options.parabolic_threshold) {
                trace.push(TraceEvent::Strategy(Strategy::Direct));
                let counts = type_histogram(&s)?;
                contract(&counts, group, dim, options, &mut trace)?
            } else if !options.unitary_reduction {
                trace.push(TraceEvent::Strategy(Strategy::Parabolic));
                let gamma = column_matching(s.j(), s.j_bar()).expect("column multisets agree");
                let counts = parabolic_character_sums(s.i(), &gamma, s.j())?;
                regroup_by_characters(&counts, dim)
            } else {
                trace.push(TraceEvent::Strategy(Strategy::UnitaryReduction));
                // reduce the side with the larger stabilizer
                let s = if left < right { s.transposed() } else { s };
                let counts = unitary_reduction_counts(&s, n, options, &mut trace)?;
                regroup_by_characters(&counts, dim)
            }
        }
        Group::Orthogonal => {
            let counts = if norm.row_partition().len() == 1 {
                trace.push(TraceEvent::Strategy(Strategy::OneRow));
                one_row_counts(s.j())
            } else if let Some(c) = independent_blocks_counts(&s).or_else(|| independent_blocks_counts(&s.transposed())) {
                trace.push(TraceEvent::Strategy(Strategy::IndependentBlocks));
                c
            } else {
                trace.push(TraceEvent::Strategy(Strategy::OrthogonalReduction));
                orthogonal_reduction_counts(&s, n, options, &mut trace)
            };
            contract(&counts, group, dim, options, &mut trace)?
        }
        Group::Symplectic => {
            trace.push(TraceEvent::Strategy(Strategy::Direct));
            let counts = type_histogram(&s)?;
            contract(&counts, group, dim, options, &mut trace)?
        }
    };
    Ok(Evaluation { value, trace })
}

fn vanish(mut trace: Trace, why: &str) -> Evaluation {
    trace.push(TraceEvent::Strategy(Strategy::Vanish));
    trace.push(TraceEvent::Vanish(why.to_string()));
    Evaluation {
        value: RationalFunction::zero(),
        trace,
    }
}

/// `Σ_ρ count(ρ) W(ρ)`, fetching the table only when some count is nonzero.
fn contract(
    counts: &ClassCounts,
    group: Group,
    dim: Dim,
    options: &Options,
    trace: &mut Trace,
) -> Result<RationalFunction, HaarError> {
    if counts.iter().next().is_none() {
        return Ok(RationalFunction::zero());
    }
    let table: Arc<WeingartenTable> = options.table(group, counts.n(), dim, trace)?;
    Ok(counts.contract(|rho| table.get(rho).clone()))
}

/// `Σ_λ χ_λ(1)^2 / (n!^2 s_λ(1^d)) Σ_μ count(μ) χ_λ(μ)`, the unitary
/// moment from cycle-type counts without a Weingarten table.
pub fn regroup_by_characters(counts: &ClassCounts, dim: Dim) -> RationalFunction {
    let n = counts.n();
    if counts.iter().next().is_none() {
        return RationalFunction::zero();
    }
    let chars = character_table(n);
    let nf = factorial(n as u64);
    partitions_of(n, dim.fixed().map(|d| d as usize))
        .iter()
        .map(|lambda| {
            let inner: BigInt = counts.iter().map(|(mu, c)| c * chars.value(lambda, mu)).sum();
            let c = dimension(lambda);
            let w = BigRational::new(&c * &c * inner, &nf * &nf);
            schur_at_one(lambda, dim).recip().scale(&w)
        })
        .sum()
}

fn memo_counts(
    group: Group,
    key: GraphKey,
    n: usize,
    options: &Options,
    seen: &mut HashSet<GraphKey>,
    trace: &mut Trace,
    compute: impl FnOnce() -> Result<ClassCounts, HaarError>,
) -> Result<Arc<ClassCounts>, HaarError> {
    if !options.memo {
        return compute().map(Arc::new);
    }
    let first = seen.insert(key.clone());
    let label = key.to_string();
    let (value, hit) = memo::get_or_compute((group, key, n), compute)?;
    if first {
        trace.push(if hit {
            TraceEvent::MemoHit(label)
        } else {
            TraceEvent::MemoMiss(label)
        });
    }
    Ok(value)
}

fn unitary_reduction_counts(
    spec: &MomentSpec,
    n: usize,
    options: &Options,
    trace: &mut Trace,
) -> Result<ClassCounts, HaarError> {
    let leaves = unitary_list_reduction(spec);
    let mut seen = HashSet::new();
    let mut total = ClassCounts::new(n);
    let one = BigInt::one();
    for leaf in &leaves {
        let key = unitary_graph_key(leaf);
        let c = memo_counts(Group::Unitary, key, n, options, &mut seen, trace, || leaf_counts(leaf))?;
        total.add_scaled(&c, &one);
    }
    trace.push(TraceEvent::Reduction {
        items: leaves.len(),
        classes: seen.len(),
    });
    Ok(total)
}

fn orthogonal_reduction_counts(spec: &MomentSpec, n: usize, options: &Options, trace: &mut Trace) -> ClassCounts {
    let classes = orthogonal_list_reduction(spec);
    let mut seen = HashSet::new();
    let mut total = ClassCounts::new(n);
    for class in &classes {
        let key = one_list_key(&class.rows);
        let c = memo_counts(Group::Orthogonal, key, n, options, &mut seen, trace, || {
            Ok(one_list_counts(&class.rows))
        })
        .expect("one-list counts are infallible");
        total.add_scaled(&c, &class.multiplicity);
    }
    trace.push(TraceEvent::Reduction {
        items: classes.len(),
        classes: seen.len(),
    });
    total
}

/// The multiplicity partitions `(λ, μ)` of the row and column lists.
pub fn multiplicity_partitions(spec: &MomentSpec) -> (crate::combinatorics::Partition, crate::combinatorics::Partition) {
    (multiplicity_partition(spec.i()), multiplicity_partition(spec.j()))
}
