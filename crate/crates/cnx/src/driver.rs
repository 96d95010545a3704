//! Countermodel search with a wall-clock limit and optional parallelism.
//!
//! Shards are searched concurrently, but the reported hit is always the one
//! a sequential search would find first.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use cnx_core::search::{
    find_countermodel_with, search_bounds_for, search_shard, shards, SearchBounds, SearchError,
    SearchOutcome, ShardOutcome,
};
use cnx_core::{Consecution, Logic};
use rayon::prelude::*;

fn deadline(bounds: &SearchBounds) -> impl Fn() -> bool + Sync {
    let end = bounds.time_limit.map(|d| Instant::now() + d);
    move || end.is_some_and(|end| Instant::now() >= end)
}

pub fn find_countermodel(
    logic: Logic,
    c: &Consecution,
    bounds: &SearchBounds,
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    let expired = deadline(bounds);
    if jobs <= 1 {
        return find_countermodel_with(logic, c, bounds, &mut || expired());
    }
    let b = search_bounds_for(logic, c, bounds)?;
    let all = shards(&b);
    let best = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let outcomes: Vec<ShardOutcome> = pool.install(|| {
        all.par_iter()
            .enumerate()
            .map(|(i, shard)| {
                let mut stop = || expired() || best.load(Ordering::Relaxed) < i;
                let out = search_shard(logic, c, shard, &b, &mut stop);
                if matches!(out, ShardOutcome::Found(_)) {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                out
            })
            .collect()
    });
    for out in outcomes {
        match out {
            ShardOutcome::Found(pm) => return Ok(SearchOutcome::Found(pm)),
            ShardOutcome::Stopped => return Ok(SearchOutcome::TimedOut),
            ShardOutcome::Exhausted => {}
        }
    }
    Ok(SearchOutcome::ExhaustedBounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cnx_core::parse;
    use std::time::Duration;

    #[test]
    fn parallel_agrees_with_sequential() {
        let cases = [
            (Logic::C, "(p0 -> p1) -> (p1 -> p0)"),
            (Logic::CnK, "((p0 #> p1) -> (~p1 #> ~p0))"),
            (Logic::CnCK, "~(~p0 @> p0)"),
            (Logic::CnCKR, "(p0 -> p0) @> p1"),
            (Logic::C, "p0 -> p0"),
        ];
        for (logic, text) in cases {
            let c = Consecution::theorem(parse(text).unwrap());
            let bounds = SearchBounds::new(2);
            let seq = find_countermodel(logic, &c, &bounds, 1).unwrap();
            for jobs in [2, 4] {
                assert_eq!(find_countermodel(logic, &c, &bounds, jobs).unwrap(), seq, "{text}");
            }
        }
    }

    #[test]
    fn zero_time_limit_times_out() {
        let c = Consecution::theorem(parse("p0 @> (p1 -> p1)").unwrap());
        let bounds = SearchBounds::new(3).with_time_limit(Duration::ZERO);
        for jobs in [1, 3] {
            assert_eq!(find_countermodel(Logic::CnCK, &c, &bounds, jobs).unwrap(), SearchOutcome::TimedOut);
        }
    }
}
