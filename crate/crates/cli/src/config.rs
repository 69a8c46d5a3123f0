use std::path::{Path, PathBuf};

use orthoshell::bvp::{LoadCase, LoadKind};
use orthoshell::effective::ProbeLoads;
use orthoshell::material::StiffnessComponents;
use orthoshell::{Geometry, KlMaterial, Material};
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_STATIONS: usize = 201;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub geometry: Option<RawGeometry>,
    pub material: Option<Material>,
    pub kl_material: Option<KlMaterial>,
    pub stiffness: Option<StiffnessComponents<f64>>,
    pub theory: Option<String>,
    pub load: Option<RawLoad>,
    pub probes: Option<RawProbes>,
    pub output: Option<PathBuf>,
    pub stations: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGeometry {
    pub rho_o: f64,
    pub eps: f64,
    pub l: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLoad {
    pub kind: Option<LoadKind>,
    pub magnitude: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProbes {
    #[serde(default = "one")]
    pub traction: f64,
    #[serde(default = "one")]
    pub pressure: f64,
    #[serde(default = "one")]
    pub torque: f64,
}

fn one() -> f64 {
    1.0
}

/// Material after the theory switch has been applied.
#[derive(Clone, Copy, Debug)]
pub enum AnyMaterial {
    Full(Material),
    Kl(KlMaterial),
}

impl AnyMaterial {
    pub fn young1(&self) -> f64 {
        match self {
            AnyMaterial::Full(m) => m.e1,
            AnyMaterial::Kl(m) => m.e1,
        }
    }

    pub fn theory_name(&self) -> &'static str {
        match self {
            AnyMaterial::Full(_) => "full",
            AnyMaterial::Kl(_) => "kl",
        }
    }
}

/// Validated run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub raw: RawConfig,
    pub output: PathBuf,
    pub stations: usize,
    pub kl: bool,
}

pub fn load(path: &Path, out: Option<PathBuf>, stations: Option<usize>, kl: bool) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("cannot parse {}: {e}", path.display())))?;
    let kl = match raw.theory.as_deref() {
        None | Some("full") => kl,
        Some("kl") => true,
        Some(other) => return Err(CliError::Config(format!("unknown theory '{other}'"))),
    };
    let stations = stations.or(raw.stations).unwrap_or(DEFAULT_STATIONS);
    if stations < 3 {
        return Err(CliError::Config(format!("stations must be at least 3, got {stations}")));
    }
    let output = out.or_else(|| raw.output.clone()).unwrap_or_else(|| PathBuf::from("."));
    Ok(RunConfig { raw, output, stations, kl })
}

impl RunConfig {
    pub fn geometry(&self) -> Result<Geometry, CliError> {
        let g = self.raw.geometry.as_ref().ok_or_else(|| CliError::Config("missing 'geometry'".into()))?;
        Geometry::new(g.rho_o, g.eps, g.l).map_err(|e| CliError::Config(e.to_string()))
    }

    /// The single material of the configuration, reduced to Kirchhoff-Love
    /// form when that theory is selected.
    pub fn material(&self) -> Result<AnyMaterial, CliError> {
        let present = [self.raw.material.is_some(), self.raw.kl_material.is_some(), self.raw.stiffness.is_some()];
        if present.iter().filter(|p| **p).count() != 1 {
            return Err(CliError::Config("exactly one of 'material', 'kl_material', 'stiffness' is required".into()));
        }
        if let Some(m) = self.full_material()? {
            return Ok(if self.kl { AnyMaterial::Kl(m.kl_reduce()) } else { AnyMaterial::Full(m) });
        }
        let k = self.raw.kl_material.expect("counted above");
        if !self.kl {
            return Err(CliError::Config("'kl_material' requires the kl theory (--kl or \"theory\": \"kl\")".into()));
        }
        KlMaterial::new(k.e1, k.e2, k.nu12, k.nu21, k.g).map(AnyMaterial::Kl).map_err(|e| CliError::Config(e.to_string()))
    }

    /// The technical moduli given directly or through stiffness components,
    /// if either is present.
    pub fn full_material(&self) -> Result<Option<Material>, CliError> {
        let m = match (&self.raw.material, &self.raw.stiffness) {
            (Some(m), _) => *m,
            (_, Some(c)) => c.technical().map_err(|e| CliError::Config(e.to_string()))?,
            _ => return Ok(None),
        };
        let report = m.validate();
        if !report.is_valid() {
            return Err(CliError::Config(format!("material is not admissible: {:?}", report.violations)));
        }
        Ok(Some(m))
    }

    /// Load of the requested kind; the magnitude comes from the config and
    /// defaults to one.
    pub fn load_case(&self, kind: LoadKind) -> Result<LoadCase<f64>, CliError> {
        if let Some(k) = self.raw.load.as_ref().and_then(|l| l.kind) {
            if k != kind {
                return Err(CliError::Config(format!("config load is {} but {} was requested", k.name(), kind.name())));
            }
        }
        LoadCase::new(kind, self.magnitude()).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn magnitude(&self) -> f64 {
        self.raw.load.as_ref().map_or(1.0, |l| l.magnitude)
    }

    pub fn probes(&self) -> ProbeLoads<f64> {
        match &self.raw.probes {
            Some(p) => ProbeLoads { traction: p.traction, pressure: p.pressure, torque: p.torque },
            None => ProbeLoads { traction: 1.0, pressure: 1.0, torque: 1.0 },
        }
    }
}
