//! Grid evaluation for each subcommand. Cells are computed in parallel and
//! assembled in grid order, so output never depends on the worker count.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use skindepth_core::dielectric;
use skindepth_core::force::{self, DEFAULT_CORRECTION_TOL, DEFAULT_FORCE_TOL};
use skindepth_core::impedance::{self, ImpedanceOptions, DEFAULT_IMPEDANCE_TOL};
use skindepth_core::materials::PRESET_NAMES;
use skindepth_core::optics;
use skindepth_core::{
    preset, Axis, DielectricModel, Error, ForceOptions, Geometry, MaterialParams, ReflectionOverride, ResponsePoint,
};

use crate::table::{Cell, Table};
use crate::{Common, OverrideArg};

/// Settings shared by all grid commands after validation.
pub struct RunContext {
    pub material: MaterialParams,
    pub model: DielectricModel,
    pub axis: Axis,
    pub tol: Option<f64>,
    pub override_: OverrideArg,
}

impl RunContext {
    pub fn from_common(c: &Common) -> Result<RunContext> {
        let material = load_material(&c.material)?;
        let model = c.model.resolve(c.kf)?;
        if let Some(t) = c.tol {
            if !(t > 1e-14 && t < 1e-1) {
                bail!("--tol {t} outside the accepted range (1e-14, 1e-1)");
            }
        }
        Ok(RunContext {
            material,
            model,
            axis: c.axis.into(),
            tol: c.tol,
            override_: c.override_,
        })
    }

    fn impedance_opts(&self) -> ImpedanceOptions {
        let opts = ImpedanceOptions::default().with_rel_tol(self.tol.unwrap_or(DEFAULT_IMPEDANCE_TOL));
        if self.override_ == OverrideArg::LocalF {
            opts.with_local_kernels()
        } else {
            opts
        }
    }

    fn force_opts(&self, default_tol: f64) -> ForceOptions {
        let reflection = match self.override_ {
            OverrideArg::PerfectConductor => ReflectionOverride::PerfectConductor,
            _ => ReflectionOverride::None,
        };
        ForceOptions {
            impedance: self.impedance_opts(),
            ..ForceOptions::default()
        }
        .with_rel_tol(self.tol.unwrap_or(default_tol))
        .with_override(reflection)
    }
}

/// A preset name, or a path to a key=value material file.
pub fn load_material(source: &str) -> Result<MaterialParams> {
    match preset(source) {
        Ok(m) => Ok(m),
        Err(Error::NotFound { .. }) if std::path::Path::new(source).is_file() => {
            MaterialParams::from_config_file(std::path::Path::new(source))
                .with_context(|| format!("--material: reading config {source}"))
        }
        Err(e) => Err(anyhow::Error::new(e).context("--material")),
    }
}

/// Runs `eval` over `items` on the pool and assembles rows in input order.
/// Unconverged cells become blank rows with the flag cleared; any other
/// error aborts the command.
fn evaluate<T, F>(table: &mut Table, items: &[T], blank: impl Fn(&T) -> Vec<Cell>, eval: F) -> Result<()>
where
    T: Sync,
    F: Fn(&T) -> std::result::Result<(Vec<Cell>, bool), Error> + Sync,
{
    let results: Vec<_> = items.par_iter().map(&eval).collect();
    for (item, r) in items.iter().zip(results) {
        match r {
            Ok((row, converged)) => table.push(row, converged),
            Err(e) if e.is_unconverged() => table.push(blank(item), false),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn blanks(lead: Vec<Cell>, total: usize, tag: Option<String>) -> Vec<Cell> {
    let mut row = lead;
    if let Some(t) = tag {
        row.push(Cell::text(t));
    }
    while row.len() + 1 < total {
        row.push(Cell::Num(None));
    }
    row.push(Cell::Flag(false));
    row
}

fn model_tag(model: DielectricModel) -> String {
    model.kind().to_string()
}

pub fn eps(ctx: &RunContext, omegas: &[f64], ks: &[f64]) -> Result<Table> {
    let mut table = Table::new(
        "eps",
        vec![
            "omega_dimensionless", "K", "axis", "model", "eps_l_re", "eps_l_im", "eps_t_re", "eps_t_im", "k_over_kf",
            "converged",
        ],
    );
    let cells: Vec<(f64, f64)> = omegas.iter().flat_map(|&w| ks.iter().map(move |&k| (w, k))).collect();
    let n = table.columns.len();
    let axis = ctx.axis;
    evaluate(
        &mut table,
        &cells,
        |&(w, k)| blanks(vec![Cell::num(w), Cell::num(k), Cell::text(axis.to_string())], n, Some(model_tag(ctx.model))),
        |&(w, k)| {
            let point = ResponsePoint::new(axis, w, 0.0)?;
            let e = dielectric::evaluate(ctx.model, &point, k, &ctx.material)?;
            Ok((
                vec![
                    Cell::num(w),
                    Cell::num(k),
                    Cell::text(axis.to_string()),
                    Cell::text(e.model.to_string()),
                    Cell::num(e.eps_l.re),
                    Cell::num(e.eps_l.im),
                    Cell::num(e.eps_t.re),
                    Cell::num(e.eps_t.im),
                    Cell::maybe(e.k_over_kf),
                    Cell::Flag(true),
                ],
                true,
            ))
        },
    )?;
    Ok(table)
}

pub fn impedance(ctx: &RunContext, omegas: &[f64], qs: &[f64]) -> Result<Table> {
    let mut table = Table::new(
        "impedance",
        vec![
            "omega_dimensionless", "Q", "axis", "model", "Z_s_re", "Z_s_im", "Z_p_re", "Z_p_im", "err_s", "err_p",
            "converged",
        ],
    );
    let cells: Vec<(f64, f64)> = omegas.iter().flat_map(|&w| qs.iter().map(move |&q| (w, q))).collect();
    let n = table.columns.len();
    let opts = ctx.impedance_opts();
    let axis = ctx.axis;
    evaluate(
        &mut table,
        &cells,
        |&(w, q)| blanks(vec![Cell::num(w), Cell::num(q), Cell::text(axis.to_string())], n, Some(model_tag(ctx.model))),
        |&(w, q)| {
            let point = ResponsePoint::new(axis, w, q)?;
            let z = impedance::impedance(&point, &ctx.material, ctx.model, &opts)?;
            Ok((
                vec![
                    Cell::num(w),
                    Cell::num(q),
                    Cell::text(axis.to_string()),
                    Cell::text(z.model.to_string()),
                    Cell::num(z.z_s.re),
                    Cell::num(z.z_s.im),
                    Cell::num(z.z_p.re),
                    Cell::num(z.z_p.im),
                    Cell::num(z.err_s),
                    Cell::num(z.err_p),
                    Cell::Flag(true),
                ],
                true,
            ))
        },
    )?;
    Ok(table)
}

pub fn absorptance(ctx: &RunContext, theta_deg: f64, omegas: &[f64]) -> Result<Table> {
    if !(0.0..90.0).contains(&theta_deg) {
        bail!("--theta {theta_deg} must lie in [0, 90) degrees");
    }
    let mut table = Table::new(
        "absorptance",
        vec![
            "omega_dimensionless", "Q", "A_s_local", "A_s_nonlocal", "A_p_local", "A_p_nonlocal", "model", "error",
            "converged",
        ],
    );
    let opts = ctx.impedance_opts();
    let sin = theta_deg.to_radians().sin();
    let tag = model_tag(ctx.model);
    evaluate(
        &mut table,
        omegas,
        |&w| {
            let mut row = vec![Cell::num(w), Cell::num(w * sin)];
            row.extend(std::iter::repeat_n(Cell::Num(None), 4));
            row.extend([Cell::text(tag.clone()), Cell::Num(None), Cell::Flag(false)]);
            row
        },
        |&w| {
            let point = ResponsePoint::real(w, w * sin)?;
            let (a_s_local, a_p_local) =
                optics::absorptance(&optics::reflection_real(&impedance::local_drude_pair(&point, &ctx.material)?)?)?;
            let z = impedance::impedance(&point, &ctx.material, ctx.model, &opts)?;
            let (a_s, a_p) = optics::absorptance(&optics::reflection_real(&z)?)?;
            Ok((
                vec![
                    Cell::num(w),
                    Cell::num(point.q),
                    Cell::num(a_s_local),
                    Cell::num(a_s),
                    Cell::num(a_p_local),
                    Cell::num(a_p),
                    Cell::text(z.model.to_string()),
                    Cell::num(z.err_s.max(z.err_p)),
                    Cell::Flag(true),
                ],
                true,
            ))
        },
    )?;
    Ok(table)
}

fn ideal_for(a_nm: f64, geometry: Geometry) -> std::result::Result<f64, Error> {
    match geometry {
        Geometry::PlatePlate => force::ideal_force(a_nm),
        Geometry::SpherePlate { radius_nm } => force::ideal_sphere_force(a_nm, radius_nm),
    }
}

pub fn force(ctx: &RunContext, geometry: Geometry, separations: &[f64]) -> Result<Table> {
    let mut table = Table::new(
        "force",
        vec!["a_nm", "geometry", "model", "F", "F_s", "F_p", "F_ideal", "eta", "error", "pfa_valid", "converged"],
    );
    let n = table.columns.len();
    let opts = ctx.force_opts(DEFAULT_FORCE_TOL);
    let tag = model_tag(ctx.model);
    let blank = |&a: &f64| {
        blanks(vec![Cell::num(a), Cell::text(geometry.to_string())], n, Some(tag.clone()))
    };
    evaluate(&mut table, separations, blank, |&a| {
        let r = force::force_for(a, &ctx.material, ctx.model, geometry, &opts)?;
        if !r.converged {
            return Ok((blank(&a), false));
        }
        let ideal = ideal_for(a, geometry)?;
        Ok((
            vec![
                Cell::num(a),
                Cell::text(geometry.to_string()),
                Cell::text(r.model.to_string()),
                Cell::num(r.value),
                Cell::num(r.s_part),
                Cell::num(r.p_part),
                Cell::num(ideal),
                Cell::num(r.value / ideal),
                Cell::num(r.error),
                Cell::Flag(r.pfa_valid()),
                Cell::Flag(true),
            ],
            true,
        ))
    })?;
    Ok(table)
}

pub fn correction(ctx: &RunContext, geometry: Geometry, separations: &[f64]) -> Result<Table> {
    match ctx.model {
        DielectricModel::Boltzmann => {}
        DielectricModel::Lindhard { .. } => {
            return Err(Error::Unsupported("the force correction is defined for the boltzmann model only".into()).into())
        }
        DielectricModel::Local => bail!("--model local has no nonlocal correction; use boltzmann"),
    }
    let mut table = Table::new(
        "correction",
        vec![
            "a_nm", "geometry", "model", "dF_rel_total", "dF_rel_p", "dF_rel_s", "dF", "F_local", "error", "pfa_valid",
            "converged",
        ],
    );
    let n = table.columns.len();
    let opts = ctx.force_opts(DEFAULT_CORRECTION_TOL);
    let tag = "boltzmann-local".to_string();
    let blank = |&a: &f64| blanks(vec![Cell::num(a), Cell::text(geometry.to_string())], n, Some(tag.clone()));
    evaluate(&mut table, separations, blank, |&a| {
        let c = force::nonlocal_correction(a, &ctx.material, geometry, &opts)?;
        if !c.converged {
            return Ok((blank(&a), false));
        }
        Ok((
            vec![
                Cell::num(a),
                Cell::text(geometry.to_string()),
                Cell::text(tag.clone()),
                Cell::num(c.relative()),
                Cell::num(c.relative_p()),
                Cell::num(c.relative_s()),
                Cell::num(c.delta),
                Cell::num(c.local.value),
                Cell::num(c.error),
                Cell::Flag(c.local.pfa_valid()),
                Cell::Flag(true),
            ],
            true,
        ))
    })?;
    Ok(table)
}

pub fn presets() -> Result<Table> {
    let mut table = Table::new(
        "presets",
        vec!["name", "omega_p_rad_s", "gamma", "v_f_cm_s", "v_f_over_c", "delta_nm"],
    );
    for name in PRESET_NAMES {
        let m = preset(name)?;
        table.push(
            vec![
                Cell::text(name),
                Cell::num(m.omega_p),
                Cell::num(m.gamma),
                Cell::num(m.fermi_velocity_cm_s()),
                Cell::num(m.v_f_over_c),
                Cell::num(m.penetration_depth_nm()),
            ],
            true,
        );
    }
    Ok(table)
}
