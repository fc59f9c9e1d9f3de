//! The four commands: figure-data sweeps and the verification suite.

use dirtytape::bounds::{
    awgn_capacity, compensation_rate, lattice_rate, SingleUserParams,
};
use dirtytape::oracle::{
    audit_beta_star, audit_compensation, audit_jdpt, audit_mac_dtc, mc_consistency_audit,
    theorem1_audit, theorem2_audit,
};
use dirtytape::regions::{
    frontier_union, jdpt_frontier, mac_dtc_frontier, state_free_mac_pentagon, Frontier, JdptGrid,
    MacGrid, MacParams,
};
use dirtytape::timeshare::{timeshared_compensation, CombinedBound, TimeshareGrid};
use dirtytape::{Error, Unit};

use crate::config::RunConfig;
use crate::output::{rate_cell, Cell, Table};
use crate::CliError;

fn lib_err(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn tool_meta(table: &mut Table, command: &str) {
    table.meta("tool", concat!("dirtytape ", env!("CARGO_PKG_VERSION")));
    table.meta("command", command);
}

/// Sweep of the single-user bounds over transmit power: one row per power
/// with columns `p, snr_db, c1, c2, c3, c4, upper`.
pub fn single_user(
    cfg: &RunConfig,
    sweep_min: Option<f64>,
    sweep_max: Option<f64>,
    sweep_points: Option<usize>,
) -> Result<Table, CliError> {
    let ps = cfg.ps.unwrap_or(100.0);
    let pz = cfg.pz.unwrap_or(1.0);
    let lo = sweep_min.or(cfg.sweep_min).unwrap_or(1e-2);
    let hi = sweep_max.or(cfg.sweep_max).unwrap_or(1e5);
    let points = sweep_points.or(cfg.sweep_points).unwrap_or(120);
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi <= lo || points < 2 {
        return Err(CliError::Usage(format!(
            "invalid sweep: {points} log-spaced points on [{lo}, {hi}]"
        )));
    }
    let grid = TimeshareGrid {
        base_points: cfg.grid.unwrap_or(101),
        refine_rounds: 2,
    };
    let solver = CombinedBound::new(ps, pz, hi, &grid).map_err(lib_err)?;

    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let p = (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64).exp();
        let params = SingleUserParams::new(p, ps, pz).map_err(lib_err)?;
        let c1 = compensation_rate(&params);
        let c2 = timeshared_compensation(&params, &grid).map_err(lib_err)?.rate;
        let c3 = lattice_rate(&params);
        let c4 = solver.solve(p).map_err(lib_err)?.rate;
        let upper = awgn_capacity(&params);
        rows.push(vec![
            Cell::Float(p),
            Cell::Float(10.0 * (p / pz).log10()),
            rate_cell(c1, cfg.units),
            rate_cell(c2, cfg.units),
            rate_cell(c3, cfg.units),
            rate_cell(c4, cfg.units),
            rate_cell(upper, cfg.units),
        ]);
    }

    let mut table = Table::new(vec!["p", "snr_db", "c1", "c2", "c3", "c4", "upper"]);
    tool_meta(&mut table, "single-user");
    table.meta_float("ps", ps);
    table.meta_float("pz", pz);
    table.meta_float("sweep-min", lo);
    table.meta_float("sweep-max", hi);
    table.meta("sweep-points", points.to_string());
    table.meta(
        "timeshare-grid",
        format!("{0}x{0}+{1}", grid.base_points, grid.refine_rounds),
    );
    table.meta("units", cfg.units.label());
    table.push_block(None, rows);
    Ok(table)
}

fn frontier_rows(frontier: &Frontier, unit: Unit) -> Vec<Vec<Cell>> {
    frontier
        .points()
        .iter()
        .map(|(r1, r2)| vec![rate_cell(*r1, unit), rate_cell(*r2, unit)])
        .collect()
}

fn region_params(cfg: &RunConfig, command: &str) -> Result<MacParams, CliError> {
    let ps = cfg.ps.ok_or_else(|| {
        CliError::Usage(format!(
            "--ps is required for {command} (no canonical interference power exists)"
        ))
    })?;
    MacParams::new(
        cfg.p1.unwrap_or(200.0),
        cfg.p2.unwrap_or(100.0),
        ps,
        cfg.pz.unwrap_or(1.0),
    )
    .map_err(lib_err)
}

fn region_meta(table: &mut Table, params: &MacParams, cfg: &RunConfig) {
    table.meta_float("p1", params.p1());
    table.meta_float("p2", params.p2());
    table.meta_float("ps", params.ps());
    table.meta_float("pz", params.pz());
    table.meta("units", cfg.units.label());
}

/// All-causal MAC frontier plus the state-free outer bound.
pub fn mac_dtc(cfg: &RunConfig) -> Result<Table, CliError> {
    let params = region_params(cfg, "mac-dtc")?;
    let grid = MacGrid {
        beta_points: cfg.grid.unwrap_or(201),
        frontier_points: 1001,
    };
    let achievable = mac_dtc_frontier(&params, &grid).map_err(lib_err)?;
    let outer = frontier_union(&[state_free_mac_pentagon(&params)], grid.frontier_points)
        .map_err(lib_err)?;

    let mut table = Table::new(vec!["r1", "r2"]);
    tool_meta(&mut table, "mac-dtc");
    region_meta(&mut table, &params, cfg);
    table.meta("beta-grid", grid.beta_points.to_string());
    table.meta("frontier-points", grid.frontier_points.to_string());
    table.push_block(Some("achievable"), frontier_rows(&achievable, cfg.units));
    table.push_block(Some("outer-bound"), frontier_rows(&outer, cfg.units));
    Ok(table)
}

/// Joint dirty-paper/dirty-tape frontier plus the state-free outer bound.
pub fn jdpt(cfg: &RunConfig) -> Result<Table, CliError> {
    let params = region_params(cfg, "jdpt")?;
    let grid = JdptGrid {
        beta_points: cfg.grid.unwrap_or(201),
        alpha_bracket: cfg.alpha_bracket.unwrap_or((-1.0, 2.0)),
        ..Default::default()
    };
    let result = jdpt_frontier(&params, &grid).map_err(lib_err)?;
    let outer = frontier_union(&[state_free_mac_pentagon(&params)], grid.frontier_points)
        .map_err(lib_err)?;

    let mut table = Table::new(vec!["r1", "r2"]);
    tool_meta(&mut table, "jdpt");
    region_meta(&mut table, &params, cfg);
    table.meta("beta-grid", grid.beta_points.to_string());
    table.meta(
        "alpha-bracket",
        format!("{}:{}", grid.alpha_bracket.0, grid.alpha_bracket.1),
    );
    table.meta("alpha-points", grid.alpha_points.to_string());
    table.meta("frontier-points", grid.frontier_points.to_string());
    table.meta("refine-rounds", grid.refine_rounds.to_string());
    // Sum bounds that went negative before clamping, and frontier points
    // whose winning alpha sat on the bracket edge.
    table.meta("clamped-pentagons", result.clamped_pentagons.to_string());
    table.meta(
        "alpha-at-bracket-edge",
        result.alpha_at_bracket_edge.to_string(),
    );
    table.push_block(Some("achievable"), frontier_rows(&result.frontier, cfg.units));
    table.push_block(Some("outer-bound"), frontier_rows(&outer, cfg.units));
    Ok(table)
}

/// Verification suite; returns the report table and whether every check
/// passed. Failures of individual checks (including numerical errors) are
/// rows, not aborts.
pub fn verify(
    cfg: &RunConfig,
    trials: Option<usize>,
    theorem2_trials: Option<usize>,
    mc_samples: Option<usize>,
) -> Result<(Table, bool), CliError> {
    let trials = trials.or(cfg.trials).unwrap_or(1000);
    let t2_trials = theorem2_trials.or(cfg.theorem2_trials).unwrap_or(10_000);
    let samples = mc_samples.or(cfg.mc_samples).unwrap_or(1_000_000);
    let params = SingleUserParams::new(
        cfg.p.unwrap_or(100.0),
        cfg.ps.unwrap_or(100.0),
        cfg.pz.unwrap_or(1.0),
    )
    .map_err(lib_err)?;
    let seed = cfg.seed;

    fn push(
        rows: &mut Vec<Vec<Cell>>,
        name: &str,
        count: usize,
        worst: f64,
        tol: f64,
        pass: bool,
        note: String,
    ) {
        rows.push(vec![
            Cell::Text(name.into()),
            Cell::Int(count as u64),
            Cell::Float(worst),
            Cell::Float(tol),
            Cell::Bool(pass),
            Cell::Text(note),
        ]);
    }
    fn failed(rows: &mut Vec<Vec<Cell>>, name: &str, count: usize, e: Error) {
        rows.push(vec![
            Cell::Text(name.into()),
            Cell::Int(count as u64),
            Cell::Float(f64::NAN),
            Cell::Float(f64::NAN),
            Cell::Bool(false),
            Cell::Text(e.to_string()),
        ]);
    }

    let mut rows: Vec<Vec<Cell>> = Vec::new();
    let mut all_pass = true;

    match audit_compensation(trials, seed) {
        Ok(r) => {
            all_pass &= r.pass;
            push(&mut rows, "compensation-vs-oracle", r.trials, r.worst_abs_nats, r.tolerance_nats, r.pass, String::new());
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "compensation-vs-oracle", trials, e);
        }
    }
    match audit_mac_dtc(trials, seed) {
        Ok(r) => {
            all_pass &= r.pass;
            push(&mut rows, "mac-dtc-vs-oracle", r.trials, r.worst_abs_nats, r.tolerance_nats, r.pass, String::new());
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "mac-dtc-vs-oracle", trials, e);
        }
    }
    match audit_jdpt(trials, seed) {
        Ok(r) => {
            all_pass &= r.pass;
            for (name, worst) in [
                ("jdpt-r1-vs-oracle", r.worst_r1_nats),
                ("jdpt-r2-vs-oracle", r.worst_r2_nats),
                ("jdpt-sum-vs-oracle", r.worst_sum_nats),
            ] {
                push(&mut rows, name, r.trials, worst, r.tolerance_nats, worst <= r.tolerance_nats, String::new());
            }
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "jdpt-vs-oracle", trials, e);
        }
    }
    match audit_beta_star(trials, seed) {
        Ok(r) => {
            all_pass &= r.pass;
            push(
                &mut rows,
                "beta-star-coefficient",
                r.trials,
                r.worst_coefficient_gap,
                r.coefficient_tolerance,
                r.worst_coefficient_gap <= r.coefficient_tolerance,
                String::new(),
            );
            push(
                &mut rows,
                "beta-star-rate",
                r.trials,
                r.worst_rate_gap_nats,
                r.rate_tolerance_nats,
                r.worst_rate_gap_nats <= r.rate_tolerance_nats,
                String::new(),
            );
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "beta-star", trials, e);
        }
    }
    match theorem1_audit(&params) {
        Ok(r) => {
            all_pass &= r.pass;
            let worst_excess = r
                .rows
                .iter()
                .map(|row| row.mi_nats - row.bound_nats)
                .fold(f64::NEG_INFINITY, f64::max);
            push(
                &mut rows,
                "input-law-dominance",
                r.rows.len(),
                worst_excess,
                r.tolerance_nats,
                r.pass,
                String::new(),
            );
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "input-law-dominance", 12, e);
        }
    }
    match theorem2_audit(&params, t2_trials, seed) {
        Ok(r) => {
            all_pass &= r.pass;
            push(
                &mut rows,
                "gaussian-triple-dominance",
                r.trials,
                -r.worst_margin_nats,
                r.tolerance_nats,
                r.pass,
                format!("{} violations", r.violations),
            );
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "gaussian-triple-dominance", t2_trials, e);
        }
    }
    match mc_consistency_audit(samples, seed) {
        Ok(r) => {
            all_pass &= r.pass;
            for row in &r.rows {
                push(
                    &mut rows,
                    &format!("mc-{}", row.name),
                    r.samples,
                    (row.estimate_nats - row.analytic_nats).abs(),
                    3.0 * row.std_err,
                    row.within_three_se,
                    String::new(),
                );
            }
            push(&mut rows, "mc-determinism", r.samples, 0.0, 0.0, r.deterministic, String::new());
        }
        Err(e) => {
            all_pass = false;
            failed(&mut rows, "mc-consistency", samples, e);
        }
    }

    let mut table = Table::new(vec![
        "check",
        "trials",
        "worst_nats",
        "tolerance_nats",
        "pass",
        "note",
    ]);
    tool_meta(&mut table, "verify");
    table.meta("seed", seed.to_string());
    table.meta("trials", trials.to_string());
    table.meta("theorem2-trials", t2_trials.to_string());
    table.meta("mc-samples", samples.to_string());
    table.meta_float("p", params.p());
    table.meta_float("ps", params.ps());
    table.meta_float("pz", params.pz());
    table.push_block(None, rows);
    Ok((table, all_pass))
}
