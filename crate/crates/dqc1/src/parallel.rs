//! Thread-pool drivers for the embarrassingly parallel parts of the core.
//!
//! Every driver splits work into pieces fixed by the inputs alone and
//! combines them in index order, so results do not depend on the thread count.

use dqc1_core::discord::{Bipartition, BlochAxis, DiscordOptions, DiscordProblem, DiscordReport};
use dqc1_core::dqc1::{
    batch_count, plus_probability, sample_batch, Basis, Dqc1State, ShotEstimate,
};
use dqc1_core::qswe::{
    sign_enumerator, Gf2Matrix, GrayEnumerator, QsweInstance, QsweResult, QsweValue, SignOutcome,
    SignVariant, WeightCounts, Weights,
};
use dqc1_core::{DensityMatrix, Result};
use rayon::prelude::*;
use rayon::ThreadPool;

/// Basis coefficients fixed per QSWE work item; at most 2⁸ items.
pub const QSWE_PARTITION_BITS: usize = 8;

/// Pool with `threads` workers, or the available parallelism when `None`.
pub fn pool(
    threads: Option<usize>,
) -> std::result::Result<ThreadPool, rayon::ThreadPoolBuildError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    builder.build()
}

/// Same draws as [`dqc1_core::dqc1::sample_shots`], one batch per work item.
pub fn sample_shots(
    pool: &ThreadPool,
    state: &Dqc1State,
    basis: Basis,
    shots: u64,
    seed: u64,
) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(dqc1_core::Error::InvalidArgument(
            "at least one shot is required".into(),
        ));
    }
    let p = plus_probability(state, basis);
    let plus = pool.install(|| {
        (0..batch_count(shots))
            .into_par_iter()
            .map(|b| sample_batch(p, shots, seed, b))
            .sum()
    });
    Ok(ShotEstimate::from_counts(plus, shots, basis, seed))
}

fn enumerate(pool: &ThreadPool, walker: &GrayEnumerator) -> WeightCounts {
    let parts: Vec<WeightCounts> = pool.install(|| {
        (0..walker.partition_count(QSWE_PARTITION_BITS))
            .into_par_iter()
            .map(|p| walker.partition_counts(QSWE_PARTITION_BITS, p))
            .collect()
    });
    parts
        .into_iter()
        .reduce(|mut acc, p| {
            acc.merge(&p);
            acc
        })
        .expect("there is at least one partition")
}

/// Partitioned version of [`dqc1_core::qswe::qswe_eval`].
pub fn qswe_eval(pool: &ThreadPool, inst: &QsweInstance) -> Result<QsweResult> {
    let walker = GrayEnumerator::new(inst.a(), inst.b())?;
    let counts = enumerate(pool, &walker);
    Ok(QsweResult {
        value: counts.evaluate(inst.weights()),
        nullity: walker.nullity(),
        terms_enumerated: counts.terms(),
    })
}

/// Partitioned version of [`dqc1_core::qswe::sign_problem`].
pub fn sign_problem(
    pool: &ThreadPool,
    variant: SignVariant,
    a: &Gf2Matrix,
    k: i64,
    l: i64,
) -> Result<SignOutcome> {
    let walker = sign_enumerator(variant, a, k, l)?;
    let QsweValue::Integer(value) =
        enumerate(pool, &walker).evaluate(Weights::Integer { x: k, y: l })
    else {
        unreachable!("integer weights evaluate to an integer");
    };
    Ok(SignOutcome::from_value(
        value,
        a.rows(),
        k,
        l,
        walker.nullity(),
    ))
}

fn conditional_entropies(
    pool: &ThreadPool,
    problem: &DiscordProblem,
    axes: &[BlochAxis],
) -> Vec<f64> {
    pool.install(|| {
        axes.par_iter()
            .map(|&a| problem.conditional_entropy(a))
            .collect()
    })
}

/// [`dqc1_core::discord::discord_with`] with the grid evaluated in parallel.
pub fn discord(
    pool: &ThreadPool,
    rho: &DensityMatrix,
    split: Bipartition,
    opts: &DiscordOptions,
) -> Result<DiscordReport> {
    let problem = DiscordProblem::new(rho, split)?;
    let axes = DiscordProblem::grid_axes(opts);
    let values = conditional_entropies(pool, &problem, &axes);
    Ok(problem.report_from_grid(&axes, &values, opts))
}

/// [`dqc1_core::discord::discord_scan_xy`] with both grids evaluated in
/// parallel.
pub fn discord_scan_xy(
    pool: &ThreadPool,
    state: &Dqc1State,
    samples: usize,
) -> Result<DiscordReport> {
    let (problem, phis) = dqc1_core::discord::xy_scan_problem(state, samples)?;
    let plane: Vec<BlochAxis> = phis.iter().map(|&p| BlochAxis::equatorial(p)).collect();
    let conditional = conditional_entropies(pool, &problem, &plane);
    let sphere = conditional_entropies(
        pool,
        &problem,
        &DiscordProblem::grid_axes(&DiscordOptions::default()),
    );
    Ok(problem.report_from_xy_scan(&phis, &conditional, &sphere))
}
