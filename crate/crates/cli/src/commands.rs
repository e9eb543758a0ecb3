//! The `plan`, `solve` and `simulate` subcommands.
//!
//! Each command writes its files into an output directory and returns their
//! paths. All output is a pure function of the inputs and the seed.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use mirrorloc::geometry::{normalize_orientation, virtual_point, Pose2D, Ray};
use mirrorloc::paths::{generate_waypoints, path_length, shortest, PathKind};
use mirrorloc::placement::{build_plan, PlacementParams, PlacementPlan};
use mirrorloc::simulate::{placement_regions, run_monte_carlo, RmseReport, Scenario};
use mirrorloc::solver::solve;
use mirrorloc::Execution;

use crate::config::{ScenarioConfig, DEFAULT_ITERATIONS};
use crate::error::{CliError, Result};
use crate::format::{fmt_deg, fmt_num, PlotData, Table};
use crate::observations::ObservationSet;

pub const STATIONS_CSV: &str = "stations.csv";
pub const PLAN_SUMMARY_CSV: &str = "plan_summary.csv";
pub const PATHS_CSV: &str = "paths.csv";
pub const PLAN_DAT: &str = "plan.dat";
pub const RESULTS_CSV: &str = "results.csv";
pub const SIMULATE_CSV: &str = "simulate.csv";
pub const SCATTER_DAT: &str = "scatter.dat";
pub const REGIONS_DAT: &str = "regions.dat";

/// Noisy placement regions drawn for the region plot.
const REGION_DRAWS: usize = 20;

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub iterations: Option<usize>,
}

fn ensure_dir(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))
}

fn polygon(points: &[Pose2D]) -> Vec<Vec<f64>> {
    points
        .iter()
        .chain(points.first())
        .map(|p| vec![p.x, p.y])
        .collect()
}

/// Placement parameters from the target's noiseless observation.
fn placement(cfg: &ScenarioConfig, scene: &Scenario) -> Result<PlacementParams> {
    let o = scene.target_observation()?;
    Ok(PlacementParams::new(
        o.bearing,
        o.estimated_range,
        cfg.reflector.size,
        scene.epsilon,
    )?)
}

/// Paths through every planned beacon, starting next to the observer.
fn plan_paths(plan: &PlacementPlan) -> Result<Vec<mirrorloc::paths::PathPlan>> {
    let first = plan.stations.first().ok_or(mirrorloc::Error::InvalidCount(0))?;
    // stations step against the axis, so point it back at the observer
    let axis = Ray::new(plan.observer, plan.params.alpha.rotated(PI));
    PathKind::ALL
        .iter()
        .map(|&kind| {
            Ok(generate_waypoints(
                kind,
                first.beacons[0],
                &axis,
                plan.pair_separation(),
                plan.step_size,
                plan.stations.len(),
            )?)
        })
        .collect()
}

pub fn plan(cfg: &ScenarioConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let scene = cfg.scenario()?;
    let params = placement(cfg, &scene)?;
    let plan = build_plan(scene.observer, &params)?;
    let paths = plan_paths(&plan)?;
    ensure_dir(out)?;

    let mut summary = Table::new(&[
        "alpha_deg",
        "d_total",
        "reflector_size",
        "epsilon_deg",
        "step_size",
        "lateral_half_extent",
        "pair_separation",
        "stations",
        "beacons",
    ]);
    summary.push(vec![
        fmt_num(params.alpha.degrees()),
        fmt_num(params.d_total),
        fmt_num(params.reflector_size),
        fmt_deg(params.epsilon),
        fmt_num(plan.step_size),
        fmt_num(plan.lateral_half_extent),
        fmt_num(plan.pair_separation()),
        plan.stations.len().to_string(),
        plan.beacon_count.to_string(),
    ]);

    let mut stations = Table::new(&[
        "station",
        "side",
        "distance",
        "reflection_x",
        "reflection_y",
        "beacon_x",
        "beacon_y",
        "apex_x",
        "apex_y",
        "back_x",
        "back_y",
        "across_x",
        "across_y",
    ]);
    for s in &plan.stations {
        for (side, (beacon, region)) in ["right", "left"].iter().zip(s.beacons.iter().zip(&s.regions)) {
            let mut row = vec![
                s.index.to_string(),
                side.to_string(),
                fmt_num(s.distance),
                fmt_num(s.reflection.x),
                fmt_num(s.reflection.y),
                fmt_num(beacon.x),
                fmt_num(beacon.y),
            ];
            row.extend(region.iter().flat_map(|p| [fmt_num(p.x), fmt_num(p.y)]));
            stations.push(row);
        }
    }

    let a = plan.pair_separation();
    let b = plan.step_size;
    let n = plan.stations.len();
    let best = shortest(a, b, n)?;
    let mut path_table = Table::new(&["kind", "a", "b", "n", "length", "polyline_length", "shortest"]);
    for p in &paths {
        path_table.push(vec![
            p.kind.name().into(),
            fmt_num(a),
            fmt_num(b),
            n.to_string(),
            fmt_num(path_length(p.kind, a, b, n)?),
            fmt_num(p.total_length),
            (p.kind == best).to_string(),
        ]);
    }

    let mut dat = PlotData::new(&format!("placement plan for {}", cfg.name));
    dat.series(
        "observation ray",
        &["x", "y"],
        [scene.observer, virtual_point(scene.observer, params.alpha, params.d_total)].map(|p| vec![p.x, p.y]),
    );
    dat.series("reflector", &["x", "y"], scene.reflector.endpoints().map(|p| vec![p.x, p.y]));
    let mut triangles = Vec::new();
    for s in &plan.stations {
        for r in &s.regions {
            triangles.extend(polygon(r));
            // break between polygons
            triangles.push(Vec::new());
        }
    }
    dat.series("placement regions", &["x", "y"], triangles);
    dat.series("beacons", &["x", "y"], plan.beacons().map(|p| vec![p.x, p.y]));
    for p in &paths {
        dat.series(&format!("{} path", p.kind.name()), &["x", "y"], p.waypoints.iter().map(|w| vec![w.x, w.y]));
    }

    let files = [
        (PLAN_SUMMARY_CSV, summary),
        (STATIONS_CSV, stations),
        (PATHS_CSV, path_table),
    ];
    let mut written = Vec::new();
    for (name, t) in files {
        let path = out.join(name);
        t.write(&path)?;
        written.push(path);
    }
    let path = out.join(PLAN_DAT);
    dat.write(&path)?;
    written.push(path);
    Ok(written)
}

pub fn solve_observations(cfg: &ScenarioConfig, obs: &ObservationSet, out: &Path) -> Result<Vec<PathBuf>> {
    let observer: Pose2D = cfg.observer.into();
    let result = solve(observer, &obs.target, &obs.beacons, &cfg.solve_options())?;
    // truth is optional: a config whose target is not visible still solves
    let truth = cfg.scenario().ok();
    let real_ref = truth.as_ref().and_then(|s| s.reflection_point().ok());
    ensure_dir(out)?;

    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
    let r = result.reflection_point();
    let mut t = Table::new(&["experiment", "quantity", "real", "measured"]);
    let rows: [(&str, Option<f64>, String); 12] = [
        ("x_ref", real_ref.map(|p| p.x), fmt_num(r.x)),
        ("y_ref", real_ref.map(|p| p.y), fmt_num(r.y)),
        (
            "theta_ref_deg",
            Some(normalize_orientation(cfg.reflector.orientation_deg.to_radians()).to_degrees()),
            fmt_deg(result.reflector.orientation()),
        ),
        ("x_tar", Some(cfg.target.x), fmt_num(result.target.x)),
        ("y_tar", Some(cfg.target.y), fmt_num(result.target.y)),
        ("alpha_tar_deg", None, fmt_num(obs.target.bearing.degrees())),
        ("d_total_tar", None, fmt_num(obs.target.estimated_range)),
        ("d1", real_ref.map(|p| p.distance(observer)), fmt_num(result.d1)),
        ("d2", real_ref.map(|p| p.distance(cfg.target.into())), fmt_num(result.d2)),
        ("beacons", None, obs.beacons.len().to_string()),
        ("residual_norm", None, fmt_num(result.residual_norm)),
        ("target_error", None, fmt_num(result.target.distance(cfg.target.into()))),
    ];
    for (q, real, measured) in rows {
        t.push(vec![cfg.name.clone(), q.into(), opt(real), measured]);
    }
    let path = out.join(RESULTS_CSV);
    t.write(&path)?;
    Ok(vec![path])
}

pub fn solve_file(cfg: &ScenarioConfig, obs_path: &Path, out: &Path) -> Result<Vec<PathBuf>> {
    let obs = ObservationSet::read(obs_path, &cfg.ranging)?;
    solve_observations(cfg, &obs, out)
}

fn row_label(k: usize, r: &RmseReport) -> String {
    format!(
        "row {} sigma_bearing_deg={} sigma_range={}",
        k + 1,
        fmt_deg(r.noise.sigma_bearing),
        fmt_num(r.noise.sigma_range)
    )
}

pub fn simulate(cfg: &ScenarioConfig, overrides: Overrides, out: &Path) -> Result<Vec<PathBuf>> {
    let scene = cfg.scenario()?;
    if scene.beacons.is_empty() {
        return Err(CliError::config("simulate needs at least one beacon"));
    }
    if cfg.simulate.noise.is_empty() {
        return Err(CliError::config("simulate needs at least one [[simulate.noise]] row"));
    }
    let iterations = overrides
        .iterations
        .or(cfg.simulate.iterations)
        .unwrap_or(DEFAULT_ITERATIONS);
    if iterations == 0 {
        return Err(CliError::config("iterations must be at least 1"));
    }
    let seed = overrides.seed.or(cfg.simulate.seed).unwrap_or(0);
    let opts = cfg.solve_options();

    let reports = cfg
        .simulate
        .noise
        .iter()
        .map(|row| Ok(run_monte_carlo(&scene, &row.model()?, iterations, seed, &opts, Execution::default())?))
        .collect::<Result<Vec<_>>>()?;
    ensure_dir(out)?;

    let mut t = Table::new(&[
        "sigma_bearing_deg",
        "sigma_range",
        "iterations",
        "failures",
        "rmse_ref",
        "rmse_tar",
        "rmse_ref_euclidean",
        "rmse_tar_euclidean",
    ]);
    for r in &reports {
        t.push(vec![
            fmt_deg(r.noise.sigma_bearing),
            fmt_num(r.noise.sigma_range),
            r.iterations.to_string(),
            r.failures.to_string(),
            fmt_num(r.rmse_reflector),
            fmt_num(r.rmse_target),
            fmt_num(r.rmse_reflector_euclidean),
            fmt_num(r.rmse_target_euclidean),
        ]);
    }

    let mut scatter = PlotData::new(&format!("true and estimated positions for {}, seed {seed}", cfg.name));
    let truth = &reports[0];
    scatter.series("true reflection point", &["x", "y"], [vec![truth.reflection_truth.x, truth.reflection_truth.y]]);
    scatter.series("true target", &["x", "y"], [vec![scene.target.x, scene.target.y]]);
    for (k, r) in reports.iter().enumerate() {
        let ok: Vec<_> = r.records.iter().filter_map(|rec| rec.outcome.as_ref().ok()).collect();
        let label = row_label(k, r);
        scatter.series(
            &format!("estimated reflection point, {label}"),
            &["x", "y"],
            ok.iter().map(|e| vec![e.reflection_point.x, e.reflection_point.y]),
        );
        scatter.series(
            &format!("estimated target, {label}"),
            &["x", "y"],
            ok.iter().map(|e| vec![e.target.x, e.target.y]),
        );
    }

    // region shift under the noisiest bearing row
    let noisiest = reports
        .iter()
        .map(|r| r.noise)
        .fold(reports[0].noise, |a, b| if b.sigma_bearing > a.sigma_bearing { b } else { a });
    let regions = placement_regions(&scene, &noisiest, REGION_DRAWS, seed)?;
    let mut region_dat = PlotData::new(&format!(
        "placement region at the observed range, sigma_bearing_deg={} sigma_range={}",
        fmt_deg(noisiest.sigma_bearing),
        fmt_num(noisiest.sigma_range)
    ));
    let tris = |rs: &[mirrorloc::simulate::NoisyRegion]| {
        let mut rows = Vec::new();
        for r in rs {
            for tri in &r.triangles {
                rows.extend(polygon(tri));
                rows.push(Vec::new());
            }
        }
        rows
    };
    region_dat.series("noiseless region", &["x", "y"], tris(&regions[..1]));
    region_dat.series("noisy regions", &["x", "y"], tris(&regions[1..]));
    let apexes = |rs: &[mirrorloc::simulate::NoisyRegion]| rs.iter().map(|r| vec![r.apex.x, r.apex.y]).collect::<Vec<_>>();
    region_dat.series("noiseless apex", &["x", "y"], apexes(&regions[..1]));
    region_dat.series("noisy apexes", &["x", "y"], apexes(&regions[1..]));

    let mut written = Vec::new();
    let path = out.join(SIMULATE_CSV);
    t.write(&path)?;
    written.push(path);
    for (name, dat) in [(SCATTER_DAT, &scatter), (REGIONS_DAT, &region_dat)] {
        let path = out.join(name);
        dat.write(&path)?;
        written.push(path);
    }
    Ok(written)
}

/// Noiseless observations of the configured truth.
pub fn synthesize(cfg: &ScenarioConfig) -> Result<ObservationSet> {
    let scene = cfg.scenario()?;
    Ok(ObservationSet {
        target: scene.target_observation()?,
        beacons: scene.beacon_specs()?,
    })
}

