//! `verify all`: every check with fixed bounds.

use rayon::prelude::*;
use stern_core::automaton::{compare_densities, Dfao};
use stern_core::degrees::DegreeClaim;
use stern_core::eval::verify_special_values;
use stern_core::roots::{self, RootSetId};

use crate::args::Profile;
use crate::output::Line;
use crate::{sweep, CliError};

/// Bounds used by one profile.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub roots_max: u64,
    pub ineq_max: u64,
    pub closure_max: u64,
    pub scaling_max: u64,
    pub scaling_kmax: u32,
    pub witness_m_max: u32,
    pub preperiod: usize,
    pub period: usize,
    pub prefix: usize,
    pub run_max: u64,
    pub cesaro_iterations: u32,
    pub cesaro_tol: f64,
    pub density_terms: u32,
    pub density_tol: f64,
    pub densities_imax: u32,
    pub degrees_max: u64,
    pub families_m_max: u32,
    pub families_k_max: u32,
    pub census_max: u64,
    pub oracles_max: u64,
}

pub const DESK: Bounds = Bounds {
    roots_max: 1 << 20,
    ineq_max: 100_000,
    closure_max: 1 << 20,
    scaling_max: 4096,
    scaling_kmax: 20,
    witness_m_max: 20,
    preperiod: 1 << 10,
    period: 1 << 10,
    prefix: 1 << 15,
    run_max: 1 << 16,
    cesaro_iterations: 10_000,
    cesaro_tol: 1e-3,
    density_terms: 64,
    density_tol: 1e-2,
    densities_imax: 24,
    degrees_max: 1 << 20,
    families_m_max: 3,
    families_k_max: 80,
    census_max: 1 << 20,
    oracles_max: 1 << 16,
};

pub const QUICK: Bounds = Bounds {
    roots_max: 1 << 12,
    ineq_max: 1000,
    closure_max: 1 << 12,
    scaling_max: 256,
    scaling_kmax: 12,
    witness_m_max: 10,
    preperiod: 64,
    period: 64,
    prefix: 1 << 10,
    run_max: 1 << 10,
    cesaro_iterations: 1000,
    cesaro_tol: 1e-3,
    density_terms: 64,
    density_tol: 1e-2,
    densities_imax: 12,
    degrees_max: 1 << 12,
    families_m_max: 2,
    families_k_max: 40,
    census_max: 1 << 12,
    oracles_max: 1 << 10,
};

pub const PRIMES: [u64; 3] = [7, 11, 13];
pub const TARGETS: [RootSetId; 2] = [RootSetId::MinusHalf, RootSetId::MinusThird];

type Task = Box<dyn Fn() -> Result<Vec<Line>, CliError> + Send + Sync>;

fn one(check: String, f: impl Fn() -> stern_core::VerificationReport + Send + Sync + 'static) -> Task {
    Box::new(move || Ok(vec![Line::report(check.clone(), f())]))
}

fn tasks(b: Bounds) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(one("roots-scan".into(), move || sweep::roots_scan(b.roots_max)));
    for k in 4..=10 {
        tasks.push(Box::new(move || {
            Ok(vec![Line::report(format!("ineq1 k={k}"), roots::verify_ineq1(k, b.ineq_max)?)])
        }));
    }
    for a in TARGETS {
        tasks.push(Box::new(move || {
            Ok(vec![
                Line::report(format!("closure {a}"), roots::verify_closure(a, b.closure_max)?),
                Line::report(
                    format!("scaling {a}"),
                    roots::verify_scaling(a, b.scaling_max, b.scaling_kmax)?,
                ),
            ])
        }));
    }
    tasks.push(one("aperiodicity-witness".into(), move || {
        roots::verify_aperiodicity_witness(4, b.witness_m_max)
    }));
    for p in PRIMES {
        for a in TARGETS {
            tasks.push(Box::new(move || {
                let dfao = Dfao::build(p, &a.point())?;
                let label = format!("p={p} t={a}");
                Ok(vec![
                    Line::report(
                        format!("periodicity {label}"),
                        dfao.periodicity_search(b.preperiod, b.period, b.prefix)?,
                    ),
                    Line::report(format!("automaton-run {label}"), dfao.verify_run(b.run_max)),
                    Line::report(format!("automaton-structure {label}"), dfao.analyze().into_report()),
                    Line::report(
                        format!("cesaro {label}"),
                        dfao.cesaro_check(b.cesaro_iterations, b.cesaro_tol),
                    ),
                    Line::report(
                        format!("density-average {label}"),
                        dfao.density_check(b.density_terms, b.density_tol)?,
                    ),
                ])
            }));
        }
    }
    for a in TARGETS {
        tasks.push(Box::new(move || {
            Ok(vec![Line::report(format!("densities {a}"), compare_densities(a, &PRIMES, b.densities_imax)?)])
        }));
    }
    tasks.push(one("degrees-pair".into(), move || sweep::degrees(DegreeClaim::Pair, b.degrees_max)));
    tasks.push(one("degrees-triple".into(), move || sweep::degrees(DegreeClaim::Triple, b.degrees_max)));
    tasks.push(one("no-quad".into(), move || sweep::degrees(DegreeClaim::NoQuad, b.degrees_max)));
    tasks.push(one("reciprocal-families".into(), move || {
        sweep::reciprocal_families(b.families_m_max, b.families_k_max)
    }));
    tasks.push(one("rec-census".into(), move || sweep::census(b.census_max).into_report()));
    tasks.push(one("oracles".into(), move || verify_special_values(b.oracles_max)));
    tasks
}

/// Runs every check of `profile`; output order is the task order.
pub fn run_all(profile: Profile) -> Result<Vec<Line>, CliError> {
    let bounds = match profile {
        Profile::Desk => DESK,
        Profile::Quick => QUICK,
    };
    let results: Vec<Result<Vec<Line>, CliError>> = tasks(bounds).par_iter().map(|task| task()).collect();
    let mut lines = Vec::new();
    for r in results {
        lines.extend(r?);
    }
    Ok(lines)
}
