//! Parallel sweeps over index ranges.
//!
//! Ranges are cut into fixed-size chunks regardless of the thread count and
//! partial results are merged in chunk order, so the result never depends on
//! scheduling.

use std::ops::Range;

use rayon::prelude::*;
use stern_core::degrees::{DegreeClaim, DegreeSweep};
use stern_core::reciprocal::{check_family_case, family_cases, family_report, RecCensus, RecScan};
use stern_core::roots::RootScan;
use stern_core::VerificationReport;

const CHUNK: u64 = 1 << 14;

fn chunks(range: Range<u64>) -> Vec<Range<u64>> {
    (range.start..range.end)
        .step_by(CHUNK as usize)
        .map(|start| start..(start + CHUNK).min(range.end))
        .collect()
}

pub fn sweep<T, S, M>(range: Range<u64>, scan: S, merge: M) -> T
where
    T: Send,
    S: Fn(Range<u64>) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    let parts: Vec<T> = chunks(range.clone()).into_par_iter().map(&scan).collect();
    parts.into_iter().reduce(merge).unwrap_or_else(|| scan(range))
}

pub fn roots_scan(max: u64) -> VerificationReport {
    sweep(1..max + 1, RootScan::scan, RootScan::merge).into_report(max)
}

pub fn degrees(claim: DegreeClaim, max: u64) -> VerificationReport {
    sweep(1..max + 1, |r| DegreeSweep::scan(r, claim), DegreeSweep::merge).into_report(claim, max)
}

pub fn census(max: u64) -> RecCensus {
    RecCensus::from_scan(max, sweep(1..max + 1, RecScan::scan, RecScan::merge))
}

pub fn reciprocal_families(m_max: u32, k_max: u32) -> VerificationReport {
    let checks: Vec<_> = family_cases(m_max, k_max).into_par_iter().map(check_family_case).collect();
    family_report(&checks, m_max, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_covers_the_range() {
        let c = chunks(5..40_000);
        assert_eq!(c.first().unwrap().start, 5);
        assert_eq!(c.last().unwrap().end, 40_000);
        assert!(c.windows(2).all(|w| w[0].end == w[1].start));
        assert!(chunks(3..3).is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let max = 50_000;
        assert_eq!(roots_scan(max), RootScan::scan(1..max + 1).into_report(max));
        assert_eq!(
            degrees(DegreeClaim::Pair, max),
            DegreeSweep::scan(1..max + 1, DegreeClaim::Pair).into_report(DegreeClaim::Pair, max)
        );
        assert_eq!(census(max), stern_core::reciprocal::rec_census(max));
    }
}
