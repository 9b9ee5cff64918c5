//! Subcommand execution.

use num_bigint::BigUint;
use serde_json::Value;
use stern_core::automaton::{compare_densities, Dfao};
use stern_core::degrees::DegreeClaim;
use stern_core::eval::{degree_big, verify_special_values};
use stern_core::reciprocal::threshold_sum;
use stern_core::roots::{self, RootSetId};
use stern_core::{eval_exact, eval_mod, stern_pair, Residue};

use crate::args::{
    AutomatonArgs, Command, Format, ReciprocalCommand, RootsCommand, VerifyCommand, VerifyRootsCommand,
};
use crate::output::{big_number, rational, Line};
use crate::{desk, dot, row, sweep, CliError};

pub fn execute(command: &Command, format: Format) -> Result<Vec<Line>, CliError> {
    match command {
        Command::Poly { n } => {
            let (poly, _) = stern_pair(n.clone());
            if format == Format::Csv {
                return Ok(poly
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| row!("power" => i, "coeff" => big_number(c)))
                    .collect());
            }
            let coeffs: Vec<Value> = poly.coeffs().iter().map(big_number).collect();
            Ok(vec![row!(
                "n" => big_number(n),
                "coeffs" => coeffs,
                "degree" => poly.degree().map_or(Value::Null, Value::from),
            )])
        }
        Command::Eval { n, q, modulus } => Ok(vec![match modulus {
            None => row!(
                "n" => big_number(n),
                "q" => rational(q),
                "value" => rational(&eval_exact(n.clone(), q)),
            ),
            Some(p) => {
                let t = Residue::from_rational(q, *p)?;
                row!(
                    "n" => big_number(n),
                    "q" => rational(q),
                    "modulus" => *p,
                    "value" => eval_mod(n.clone(), t).value(),
                )
            }
        }]),
        Command::Degree { n } => Ok(vec![row!("n" => big_number(n), "degree" => degree_big(n)?)]),
        Command::Roots { action } => roots_command(action),
        Command::Verify { check } => verify(check),
        Command::Automaton(args) => automaton(args, format),
        Command::Reciprocal { action } => reciprocal(action),
    }
}

fn roots_command(action: &RootsCommand) -> Result<Vec<Line>, CliError> {
    match *action {
        RootsCommand::Scan { max } => Ok(vec![Line::report("roots-scan", sweep::roots_scan(max))]),
        RootsCommand::Members { set, max } => Ok(roots::r_members(set, max)
            .into_iter()
            .map(|n| row!("set" => set.to_string(), "n" => n))
            .collect()),
        RootsCommand::Density { set, imax } => {
            let counts = roots::zero_count_at_powers(set, imax);
            let densities = roots::density_at_powers(set, imax);
            Ok(counts
                .iter()
                .zip(&densities)
                .enumerate()
                .map(|(i, (&c, d))| row!("set" => set.to_string(), "i" => i, "count" => c, "density" => rational(d)))
                .collect())
        }
    }
}

fn fractional_sets(set: Option<RootSetId>) -> Vec<RootSetId> {
    set.map_or_else(|| vec![RootSetId::MinusHalf, RootSetId::MinusThird], |s| vec![s])
}

fn verify(check: &VerifyCommand) -> Result<Vec<Line>, CliError> {
    match check {
        VerifyCommand::Roots { action: VerifyRootsCommand::Scan { max } } => {
            Ok(vec![Line::report("roots-scan", sweep::roots_scan(*max))])
        }
        VerifyCommand::Ineq1 { k, max } => {
            let ks: Vec<u64> = k.map_or_else(|| (4..=10).collect(), |k| vec![k]);
            ks.iter()
                .map(|&k| Ok(Line::report(format!("ineq1 k={k}"), roots::verify_ineq1(k, *max)?)))
                .collect()
        }
        VerifyCommand::Closure { set, max } => fractional_sets(*set)
            .into_iter()
            .map(|a| Ok(Line::report(format!("closure {a}"), roots::verify_closure(a, *max)?)))
            .collect(),
        VerifyCommand::Scaling { set, max, kmax } => fractional_sets(*set)
            .into_iter()
            .map(|a| Ok(Line::report(format!("scaling {a}"), roots::verify_scaling(a, *max, *kmax)?)))
            .collect(),
        VerifyCommand::Aperiodicity { m_min, m_max } => {
            Ok(vec![Line::report("aperiodicity-witness", roots::verify_aperiodicity_witness(*m_min, *m_max))])
        }
        VerifyCommand::Densities { set, primes, imax } => fractional_sets(*set)
            .into_iter()
            .map(|a| Ok(Line::report(format!("densities {a}"), compare_densities(a, primes, *imax)?)))
            .collect(),
        VerifyCommand::DegreesPair { max } => {
            Ok(vec![Line::report("degrees-pair", sweep::degrees(DegreeClaim::Pair, *max))])
        }
        VerifyCommand::DegreesTriple { max } => {
            Ok(vec![Line::report("degrees-triple", sweep::degrees(DegreeClaim::Triple, *max))])
        }
        VerifyCommand::NoQuad { max } => {
            Ok(vec![Line::report("no-quad", sweep::degrees(DegreeClaim::NoQuad, *max))])
        }
        VerifyCommand::ReciprocalFamilies { m_max, k_max } => {
            Ok(vec![Line::report("reciprocal-families", sweep::reciprocal_families(*m_max, *k_max))])
        }
        VerifyCommand::Oracles { max } => Ok(vec![Line::report("oracles", verify_special_values(*max))]),
        VerifyCommand::All { profile } => desk::run_all(*profile),
    }
}

/// Automaton checks shared with the profiles.
pub fn automaton_action(dfao: &Dfao, args: &AutomatonArgs) -> Result<Vec<Line>, CliError> {
    let label = format!("p={} t={}", dfao.modulus(), args.target);
    if let Some(imax) = args.density {
        let counts = dfao.zero_path_counts(imax)?;
        let densities = dfao.density_counts(imax)?;
        return Ok(counts
            .iter()
            .zip(&densities)
            .enumerate()
            .map(|(i, (&c, d))| row!("i" => i, "count" => big_number(c), "density" => rational(d)))
            .collect());
    }
    if let Some(terms) = args.density_average {
        let report = dfao.density_check(terms, args.tol.unwrap_or(1e-2))?;
        return Ok(vec![Line::report(format!("density-average {label}"), report)]);
    }
    if let Some(t) = args.cesaro {
        let report = dfao.cesaro_check(t, args.tol.unwrap_or(1e-3));
        return Ok(vec![Line::report(format!("cesaro {label}"), report)]);
    }
    if args.period_search {
        let report = dfao.periodicity_search(args.preperiod, args.period, args.prefix)?;
        return Ok(vec![Line::report(format!("periodicity {label}"), report)]);
    }
    if let Some(max) = args.check_run {
        return Ok(vec![Line::report(format!("automaton-run {label}"), dfao.verify_run(max))]);
    }
    Ok(vec![Line::report(format!("automaton-structure {label}"), dfao.analyze().into_report())])
}

fn automaton(args: &AutomatonArgs, format: Format) -> Result<Vec<Line>, CliError> {
    let dfao = Dfao::build(args.p, &args.target)?;
    if format == Format::Dot {
        return Ok(vec![Line::Text(dot::automaton_dot(&dfao))]);
    }
    automaton_action(&dfao, args)
}

fn reciprocal(action: &ReciprocalCommand) -> Result<Vec<Line>, CliError> {
    match *action {
        ReciprocalCommand::Check { ref n } => {
            if *n == BigUint::ZERO {
                return Err(CliError::Usage("reciprocity is defined for n >= 1".into()));
            }
            let (poly, _) = stern_pair(n.clone());
            Ok(vec![row!(
                "n" => big_number(n),
                "reciprocal" => poly.is_palindrome(),
                "degree" => poly.degree().map_or(Value::Null, Value::from),
            )])
        }
        ReciprocalCommand::Census { max, members } => {
            let census = sweep::census(max);
            let mut lines = Vec::new();
            for k in 1..=63u32 {
                let bound = 1u64 << k;
                if bound > max {
                    break;
                }
                lines.push(row!(
                    "k" => k,
                    "bound" => bound,
                    "total" => census.total_upto(bound),
                    "threshold_sum" => threshold_sum(k, false),
                    "threshold_sum_u" => threshold_sum(k, true),
                ));
            }
            if members {
                lines.extend(census.members.iter().map(|&n| row!("member" => n)));
            }
            lines.push(Line::report("rec-census", census.into_report()));
            Ok(lines)
        }
    }
}
