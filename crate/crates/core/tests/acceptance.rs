//! The acceptance criteria, one line each:
//!
//! ```text
//! cargo test -p haar-core --test acceptance
//! ```
//!
//! Runs without the libtest harness so the report is never captured.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use haar_core::algebra::{Poly, RationalFunction};
use haar_core::combinatorics::{partitions_of, Partition};
use haar_core::integrator::{integrate_direct, integrate_monomial, integrate_monomial_with, MomentSpec, Options};
use haar_core::optimizer::{
    coset_class_sizes, coset_class_sizes_closed, one_list_counts, orthogonal_list_reduction, young_lattice, Strategy,
};
use haar_core::oracle::{brute_force_class_counts, gram_inverse_weingarten, monte_carlo_moment};
use haar_core::weingarten::build_table;
use haar_core::{ClassCounts, Dim, Group};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SECOND: Duration = Duration::from_secs(1);

/// Count table rows: the row list `I` (with `J = (1,1,2,2,...,5,5)`) and
/// `C_I(λ)` for λ = (5), (4,1), (3,2), (3,1,1), (2,2,1), (2,1,1,1), (1^5).
/// The first row's (5) entry is 384: the closed form gives 3840/10 and the
/// row must total 9!! = 945.
const COUNT_TABLE: [([i64; 10], [u64; 7]); 18] = [
    ([1, 1, 1, 1, 1, 1, 1, 1, 1, 1], [384, 240, 160, 80, 60, 20, 1]),
    ([1, 1, 1, 1, 1, 1, 1, 1, 2, 2], [0, 48, 0, 32, 12, 12, 1]),
    ([1, 1, 1, 1, 1, 1, 1, 2, 1, 2], [48, 24, 20, 6, 6, 1, 0]),
    ([1, 1, 1, 1, 1, 1, 2, 2, 2, 2], [0, 0, 16, 8, 12, 8, 1]),
    ([1, 1, 1, 1, 1, 2, 1, 2, 2, 2], [16, 16, 4, 6, 2, 1, 0]),
    ([1, 1, 1, 2, 1, 2, 1, 2, 1, 2], [24, 6, 12, 0, 3, 0, 0]),
    ([1, 1, 1, 1, 1, 1, 2, 2, 3, 3], [0, 0, 0, 8, 0, 6, 1]),
    ([1, 1, 1, 1, 1, 1, 2, 3, 2, 3], [0, 0, 8, 0, 6, 1, 0]),
    ([1, 1, 1, 1, 1, 2, 1, 2, 3, 3], [0, 8, 0, 4, 2, 1, 0]),
    ([1, 1, 1, 1, 1, 2, 1, 3, 2, 3], [8, 4, 2, 1, 0, 0, 0]),
    ([1, 1, 1, 2, 1, 2, 1, 3, 1, 3], [8, 2, 4, 0, 1, 0, 0]),
    ([1, 1, 1, 1, 2, 2, 2, 2, 3, 3], [0, 0, 0, 0, 4, 4, 1]),
    ([1, 1, 1, 1, 2, 2, 2, 3, 2, 3], [0, 0, 4, 2, 2, 1, 0]),
    ([1, 1, 1, 2, 1, 2, 2, 2, 3, 3], [0, 4, 0, 4, 0, 1, 0]),
    ([1, 1, 1, 2, 1, 2, 2, 3, 2, 3], [4, 2, 2, 0, 1, 0, 0]),
    ([1, 1, 1, 2, 1, 3, 2, 2, 2, 3], [4, 4, 0, 1, 0, 0, 0]),
    ([1, 2, 1, 2, 1, 2, 1, 2, 3, 3], [0, 6, 0, 0, 3, 0, 0]),
    ([1, 2, 1, 2, 1, 2, 1, 3, 2, 3], [6, 0, 3, 0, 0, 0, 0]),
];

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Poly::from_i64s(num), Poly::from_i64s(den))
}

fn row_values(c: &ClassCounts) -> Vec<BigInt> {
    c.row().into_iter().map(|(_, v)| v).collect()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn pairs_of(n: usize) -> Vec<i64> {
    (1..=n as i64).flat_map(|v| [v, v]).collect()
}

fn count_table() -> Result<String, String> {
    let order: Vec<Partition> = partitions_of(5, None);
    let want_order = [p(&[5]), p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1]), p(&[2, 2, 1]), p(&[2, 1, 1, 1]), Partition::ones(5)];
    ensure(order == want_order, || format!("column order {order:?}"))?;
    for (k, (rows, want)) in COUNT_TABLE.iter().enumerate() {
        let got = row_values(&one_list_counts(rows));
        ensure(got == big(want), || format!("row {}: {got:?} != {want:?}", k + 1))?;
        // the same counts with J spelled out
        let spec = MomentSpec::orthogonal(rows.to_vec(), pairs_of(5)).unwrap();
        let brute = row_values(&brute_force_class_counts(&spec).map_err(|e| e.to_string())?);
        ensure(brute == got, || format!("row {}: brute force {brute:?}", k + 1))?;
    }
    Ok("18 rows, row 1 (5) = 384".into())
}

fn lattice() -> Result<String, String> {
    let l = young_lattice(4);
    let nodes: Vec<u64> = l.nodes.iter().map(|(_, c)| c.try_into().unwrap()).collect();
    ensure(nodes == [1, 2, 1, 8, 6, 1, 48, 32, 12, 12, 1], || format!("nodes {nodes:?}"))?;
    let want = [
        (&[1][..], &[2][..], 2),
        (&[1], &[1, 1], 1),
        (&[2], &[3], 4),
        (&[2], &[2, 1], 1),
        (&[1, 1], &[2, 1], 4),
        (&[1, 1], &[1, 1, 1], 1),
        (&[3], &[4], 6),
        (&[3], &[3, 1], 1),
        (&[2, 1], &[3, 1], 4),
        (&[2, 1], &[2, 2], 2),
        (&[2, 1], &[2, 1, 1], 1),
        (&[1, 1, 1], &[2, 1, 1], 6),
        (&[1, 1, 1], &[1, 1, 1, 1], 1),
    ];
    let mut got = l.edges.clone();
    let mut expected: Vec<(Partition, Partition, u64)> = want.iter().map(|(a, b, w)| (p(a), p(b), *w)).collect();
    got.sort();
    expected.sort();
    ensure(got == expected, || format!("edges {got:?}"))?;
    Ok("11 nodes, 13 edges".into())
}

fn closed_form() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=8 {
        let rec = coset_class_sizes(n);
        let closed = coset_class_sizes_closed(n);
        for lambda in partitions_of(n, None) {
            ensure(rec.get(&lambda) == closed.get(&lambda), || format!("{lambda}"))?;
            checked += 1;
        }
    }
    ensure(coset_class_sizes(5).get(&p(&[5])) == BigInt::from(384), || "C((5)) != 384".into())?;
    Ok(format!("{checked} partitions, n <= 8"))
}

fn weingarten_tables() -> Result<String, String> {
    for group in [Group::Unitary, Group::Orthogonal, Group::Symplectic] {
        for n in 1..=3 {
            let oracle = gram_inverse_weingarten(group, n, Dim::Symbolic).map_err(|e| e.to_string())?;
            let table = build_table(group, n, Dim::Symbolic).map_err(|e| e.to_string())?;
            for lambda in partitions_of(n, None) {
                ensure(oracle.get(&lambda) == table.get(&lambda), || {
                    format!("{group} {lambda}: {} vs {}", oracle.get(&lambda), table.get(&lambda))
                })?;
            }
        }
    }
    let u = build_table(Group::Unitary, 2, Dim::Symbolic).unwrap();
    ensure(u.get(&p(&[1, 1])) == &rf(&[1], &[-1, 0, 1]), || "U (1,1)".into())?;
    ensure(u.get(&p(&[2])) == &rf(&[-1], &[0, -1, 0, 1]), || "U (2)".into())?;
    let o = build_table(Group::Orthogonal, 2, Dim::Symbolic).unwrap();
    ensure(o.get(&p(&[1, 1])) == &rf(&[1, 1], &[0, -2, 1, 1]), || "O (1,1)".into())?;
    ensure(o.get(&p(&[2])) == &rf(&[-1], &[0, -2, 1, 1]), || "O (2)".into())?;
    Ok("U, O, Sp at n = 1, 2, 3".into())
}

fn spot_specs() -> Vec<(MomentSpec, RationalFunction, u32)> {
    vec![
        (MomentSpec::unitary(vec![1], vec![1], vec![1], vec![1]).unwrap(), rf(&[1], &[0, 1]), 3),
        (
            MomentSpec::unitary(vec![1, 2], vec![1, 2], vec![1, 2], vec![1, 2]).unwrap(),
            rf(&[1], &[-1, 0, 1]),
            3,
        ),
        (MomentSpec::orthogonal(vec![1; 4], vec![1; 4]).unwrap(), rf(&[3], &[0, 2, 1]), 3),
        (MomentSpec::symplectic(vec![1, -1], vec![1, -1]).unwrap(), rf(&[1], &[0, 2]), 2),
    ]
}

fn spot_values() -> Result<String, String> {
    for (spec, want, _) in spot_specs() {
        let got = integrate_monomial(&spec, Dim::Symbolic).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{spec}: {got} != {want}"))?;
    }
    let beta = integrate_monomial(&spot_specs()[1].0, Dim::Fixed(2)).unwrap();
    ensure(beta.as_constant() == Some(BigRational::new(1.into(), 3.into())), || "U(2) value".into())?;
    let one = integrate_monomial(&spot_specs()[2].0, Dim::Fixed(1)).unwrap();
    ensure(one == RationalFunction::one(), || "O(1) value".into())?;
    Ok("1/d, 1/(d^2 - 1), 3/(d(d + 2)), 1/(2d)".into())
}

fn worked_example() -> Result<String, String> {
    let spec = MomentSpec::orthogonal(vec![1, 1, 1, 1, 1, 1, 2, 2], vec![1, 1, 1, 1, 1, 2, 1, 2]).unwrap();
    let brute = brute_force_class_counts(&spec).map_err(|e| e.to_string())?;
    ensure(brute.total() == BigInt::from(225), || format!("{} pairs", brute.total()))?;
    let classes = orthogonal_list_reduction(&spec);
    ensure(classes.len() == 1 && classes[0].multiplicity == BigInt::from(15), || {
        format!("{} classes", classes.len())
    })?;
    let reduced = one_list_counts(&classes[0].rows).scaled(&BigInt::from(15));
    ensure(reduced == brute, || format!("{reduced} vs {brute}"))?;
    Ok(format!("225 pairs = 15 x ({})", one_list_counts(&classes[0].rows)))
}

fn five_class_reduction() -> Result<String, String> {
    let spec = MomentSpec::orthogonal(vec![1, 1, 1, 1, 2, 2, 2, 2, 3, 3], vec![1, 1, 2, 2, 1, 1, 1, 2, 1, 2]).unwrap();
    let classes = orthogonal_list_reduction(&spec);
    let printed: [([i64; 10], u64, [u64; 7]); 5] = [
        ([1, 1, 4, 4, 2, 2, 3, 5, 3, 5], 3, [0, 0, 12, 6, 6, 3, 0]),
        ([1, 1, 4, 5, 2, 2, 3, 4, 3, 5], 12, [48, 48, 0, 12, 0, 0, 0]),
        ([1, 2, 4, 4, 1, 2, 3, 5, 3, 5], 6, [24, 12, 12, 0, 6, 0, 0]),
        ([1, 2, 4, 5, 1, 2, 3, 4, 3, 5], 12, [72, 0, 36, 0, 0, 0, 0]),
        ([1, 2, 4, 5, 1, 3, 3, 4, 2, 5], 12, [48, 24, 24, 0, 12, 0, 0]),
    ];
    ensure(classes.len() == 5, || format!("{} classes", classes.len()))?;
    let mut total = ClassCounts::new(5);
    for (k, (c, (list, m, column))) in classes.iter().zip(&printed).enumerate() {
        ensure(c.pairing == list, || format!("I_sigma{} = {:?}", k + 1, c.pairing))?;
        ensure(c.multiplicity == BigInt::from(*m), || format!("m_sigma{} = {}", k + 1, c.multiplicity))?;
        let weighted = one_list_counts(&c.rows).scaled(&c.multiplicity);
        ensure(row_values(&weighted) == big(column), || format!("column {}: {weighted}", k + 1))?;
        total.add_scaled(&weighted, &BigInt::from(1));
    }
    ensure(row_values(&total) == big(&[192, 84, 84, 18, 24, 3, 0]), || format!("totals {total}"))?;
    ensure(total.total() == BigInt::from(405), || "grand total".into())?;
    let brute = brute_force_class_counts(&spec).map_err(|e| e.to_string())?;
    ensure(brute == total, || format!("brute force {brute}"))?;
    Ok("m = 3, 12, 6, 12, 12; totals 192 84 84 18 24 3 0 = 405".into())
}

fn random_spec<R: Rng>(rng: &mut R, group: Group, n: usize, d: u32) -> MomentSpec {
    let k = d.min(3) as i64;
    let paired = |rng: &mut R, negate: bool| {
        let vals: Vec<i64> = (0..n).map(|_| rng.random_range(1..=k)).collect();
        let vals: Vec<i64> = if negate {
            vals.into_iter().map(|v| if rng.random_bool(0.5) { v } else { -v }).collect()
        } else {
            vals
        };
        let mut list: Vec<i64> = vals.iter().copied().chain(vals.iter().map(|&v| if negate { -v } else { v })).collect();
        list.shuffle(rng);
        list
    };
    match group {
        Group::Unitary => {
            let i: Vec<i64> = (0..n).map(|_| rng.random_range(1..=k)).collect();
            let j: Vec<i64> = (0..n).map(|_| rng.random_range(1..=k)).collect();
            let (mut ib, mut jb) = (i.clone(), j.clone());
            ib.shuffle(rng);
            jb.shuffle(rng);
            MomentSpec::unitary(i, j, ib, jb).unwrap()
        }
        _ => {
            let sp = group == Group::Symplectic;
            let i = paired(rng, sp);
            let j = paired(rng, sp);
            MomentSpec::real(group, i, j).unwrap()
        }
    }
}

fn optimizer_equivalence() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let reduce = Options {
        parabolic_threshold: 0,
        ..Options::default()
    };
    let parabolic = Options {
        unitary_reduction: false,
        ..reduce.clone()
    };
    let mut truncated = 0;
    for group in [Group::Unitary, Group::Orthogonal, Group::Symplectic] {
        for k in 0..200 {
            let n = 1 + k % 4;
            let d = match (k / 4) % 4 {
                0 => n as u32,
                1 => n as u32 + 1,
                2 => n as u32 + 3,
                _ if n >= 2 => n as u32 - 1,
                _ => 1,
            };
            if (d as usize) < n {
                truncated += 1;
            }
            let spec = random_spec(&mut rng, group, n, d);
            let dim = Dim::Fixed(d);
            let direct = integrate_direct(&spec, dim).map_err(|e| e.to_string())?;
            let mut options = vec![Options::default()];
            if group == Group::Unitary {
                options.extend([reduce.clone(), parabolic.clone()]);
            }
            for o in &options {
                let got = integrate_monomial_with(&spec, dim, o).map_err(|e| e.to_string())?.value;
                ensure(got == direct, || format!("{spec} at d={d}: {got} != {direct}"))?;
            }
        }
    }
    Ok(format!("600 specs, {truncated} with d < n"))
}

fn vanishing() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for group in [Group::Orthogonal, Group::Symplectic] {
        for _ in 0..100 {
            let m = 2 * rng.random_range(0..4) + 1;
            let draw = |rng: &mut ChaCha8Rng| -> i64 {
                let v = rng.random_range(1..=3);
                if group == Group::Symplectic && rng.random_bool(0.5) {
                    -v
                } else {
                    v
                }
            };
            let i: Vec<i64> = (0..m).map(|_| draw(&mut rng)).collect();
            let j: Vec<i64> = (0..m).map(|_| draw(&mut rng)).collect();
            check_vanishes(&MomentSpec::real(group, i, j).unwrap())?;
            checked += 1;
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(0..5);
        let m = loop {
            let m = rng.random_range(0..5);
            if m != n {
                break m;
            }
        };
        let list = |rng: &mut ChaCha8Rng, len: usize| (0..len).map(|_| rng.random_range(1..=3)).collect::<Vec<i64>>();
        let spec = MomentSpec::unitary(list(&mut rng, n), list(&mut rng, n), list(&mut rng, m), list(&mut rng, m)).unwrap();
        check_vanishes(&spec)?;
        checked += 1;
    }
    Ok(format!("{checked} monomials, no tables fetched"))
}

fn check_vanishes(spec: &MomentSpec) -> Result<(), String> {
    let e = integrate_monomial_with(spec, Dim::Symbolic, &Options::default()).map_err(|e| e.to_string())?;
    ensure(e.value.is_zero(), || format!("{spec} = {}", e.value))?;
    ensure(e.trace.strategy() == Some(Strategy::Vanish), || format!("{spec}: {:?}", e.trace.strategy()))?;
    ensure(!e.trace.fetched_tables(), || format!("{spec} fetched a table"))
}

/// Seed for the Monte Carlo criterion. Each comparison fails with
/// probability about 6e-5 even when everything is right; a failure should
/// be rerun once with another `HAAR_MC_SEED` before being treated as real.
fn mc_seed() -> u64 {
    std::env::var("HAAR_MC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(2024)
}

fn monte_carlo() -> Result<String, String> {
    let seed = mc_seed();
    let mut out = Vec::new();
    for (spec, _, d) in spot_specs() {
        let exact = integrate_monomial(&spec, Dim::Fixed(d)).unwrap().as_constant().unwrap();
        let exact = exact.numer().to_string().parse::<f64>().unwrap() / exact.denom().to_string().parse::<f64>().unwrap();
        let mc = monte_carlo_moment(&spec, d, 100_000, seed).map_err(|e| e.to_string())?;
        let z = (mc.estimate - exact) / mc.standard_error;
        ensure(mc.agrees_with(exact, 4.0), || format!("{spec} at d={d}: {mc:?} vs {exact} (z = {z:.2})"))?;
        out.push(format!("{z:+.2}"));
    }
    Ok(format!("seed {seed}, z = {}", out.join(" ")))
}

fn main() {
    let criteria: [(u32, &str, Check, Duration); 10] = [
        (1, "coset count table", count_table, 5 * SECOND),
        (2, "young lattice", lattice, SECOND),
        (3, "closed form C(λ)", closed_form, SECOND),
        (4, "weingarten = gram inverse", weingarten_tables, 30 * SECOND),
        (5, "spot integrals", spot_values, 5 * SECOND),
        (6, "225-pair example", worked_example, SECOND),
        (7, "five-class example", five_class_reduction, 5 * SECOND),
        (8, "optimizer = direct", optimizer_equivalence, 120 * SECOND),
        (9, "vanishing rules", vanishing, 5 * SECOND),
        (10, "monte carlo", monte_carlo, 60 * SECOND),
    ];
    let mut failed = Vec::new();
    for (id, name, check, budget) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; over budget"))
            }
        });
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {id:>2} {status} {name:<26} {:>7.2}s / {:>3}s  {detail}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if result.is_err() {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
