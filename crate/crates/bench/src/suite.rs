//! Benchmark suites: family × size × density groups of seeded instances.

use std::fs;
use std::path::{Path, PathBuf};

use cmsa_core::graph::{write_instance, GraphFamilySpec};
use cmsa_core::rng::{derive_seed, hash_str};
use serde::{Deserialize, Serialize};

use crate::error::BenchError;

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

/// A graph family together with its density levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyTemplate {
    /// Densities are edge probabilities.
    ErdosRenyi { densities: Vec<f64> },
    /// Densities are attachment counts `m`.
    BarabasiAlbert { densities: Vec<usize> },
    /// Densities are ring degrees `k`; every edge is rewired with `rewire_p`.
    WattsStrogatz { densities: Vec<usize>, rewire_p: f64 },
}

impl FamilyTemplate {
    fn levels(&self) -> usize {
        match self {
            Self::ErdosRenyi { densities } => densities.len(),
            Self::BarabasiAlbert { densities } | Self::WattsStrogatz { densities, .. } => densities.len(),
        }
    }

    fn group_id(&self, n: usize, level: usize) -> String {
        match self {
            Self::ErdosRenyi { densities } => format!("er_n{n}_p{}", densities[level]),
            Self::BarabasiAlbert { densities } => format!("ba_n{n}_m{}", densities[level]),
            Self::WattsStrogatz { densities, .. } => format!("ws_n{n}_k{}", densities[level]),
        }
    }

    fn instance(&self, n: usize, level: usize, seed: u64) -> GraphFamilySpec {
        match self {
            Self::ErdosRenyi { densities } => GraphFamilySpec::ErdosRenyi { n, p: densities[level], seed },
            Self::BarabasiAlbert { densities } => GraphFamilySpec::BarabasiAlbert { n, m: densities[level], seed },
            Self::WattsStrogatz { densities, rewire_p } => {
                GraphFamilySpec::WattsStrogatz { n, k: densities[level], p: *rewire_p, seed }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub families: Vec<FamilyTemplate>,
    pub sizes: Vec<usize>,
    pub instances_per_group: usize,
    #[serde(default)]
    pub tuning_instances_per_group: usize,
    pub base_seed: u64,
}

impl SuiteSpec {
    /// Sizes {250, 500, 1000, 2000} with four density levels per family and
    /// five test instances per group.
    pub fn desk_scale() -> Self {
        Self {
            families: vec![
                FamilyTemplate::BarabasiAlbert { densities: vec![2, 5, 10, 20] },
                FamilyTemplate::WattsStrogatz { densities: vec![4, 10, 20, 40], rewire_p: 0.1 },
                FamilyTemplate::ErdosRenyi { densities: vec![0.005, 0.01, 0.02, 0.05] },
            ],
            sizes: vec![250, 500, 1000, 2000],
            instances_per_group: 5,
            tuning_instances_per_group: 1,
            base_seed: 20_250_101,
        }
    }

    /// The full-size layout: 3 families × 4 sizes × 4 densities with one
    /// tuning and thirty test instances per group.
    pub fn full_scale() -> Self {
        Self { instances_per_group: 30, ..Self::desk_scale() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceRole {
    Test,
    Tuning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub instance_id: String,
    pub group_id: String,
    pub role: InstanceRole,
    /// Index of the instance's size in [`SuiteSpec::sizes`].
    pub size_level: usize,
    /// Path relative to the manifest's directory.
    pub file: PathBuf,
    pub spec: GraphFamilySpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub suite: SuiteSpec,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| BenchError::Format(format!("{}: {e}", path.display())))
    }

    pub fn test_entries(&self) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(|e| e.role == InstanceRole::Test)
    }
}

fn validate(spec: &SuiteSpec) -> Result<(), BenchError> {
    if spec.families.is_empty() || spec.sizes.is_empty() || spec.instances_per_group == 0 {
        return Err(BenchError::InvalidSpec("families, sizes and instances_per_group must be non-empty".into()));
    }
    if let Some(f) = spec.families.iter().find(|f| f.levels() == 0) {
        return Err(BenchError::InvalidSpec(format!("family {f:?} has no density levels")));
    }
    Ok(())
}

/// Enumerates every instance of the suite without touching the filesystem.
pub fn plan_suite(spec: &SuiteSpec) -> Result<Manifest, BenchError> {
    validate(spec)?;
    let mut entries = Vec::new();
    for family in &spec.families {
        for (size_level, &n) in spec.sizes.iter().enumerate() {
            for level in 0..family.levels() {
                let group_id = family.group_id(n, level);
                let group_key = hash_str(&group_id);
                let roles = [
                    (InstanceRole::Tuning, "tune", spec.tuning_instances_per_group, 1u64),
                    (InstanceRole::Test, "test", spec.instances_per_group, 0u64),
                ];
                for (role, tag, count, role_key) in roles {
                    for index in 0..count {
                        let seed = derive_seed(spec.base_seed, &[group_key, role_key, index as u64]);
                        let instance = family.instance(n, level, seed);
                        instance.validate().map_err(|e| BenchError::InvalidSpec(format!("group {group_id}: {e}")))?;
                        let instance_id = format!("{group_id}_{tag}{index:02}");
                        entries.push(ManifestEntry {
                            file: PathBuf::from(format!("{instance_id}.dimacs")),
                            instance_id,
                            group_id: group_id.clone(),
                            role,
                            size_level,
                            spec: instance,
                        });
                    }
                }
            }
        }
    }
    Ok(Manifest { schema_version: MANIFEST_SCHEMA_VERSION, suite: spec.clone(), entries })
}

/// Writes every instance and `manifest.json` into `out_dir`.
pub fn generate_suite(spec: &SuiteSpec, out_dir: &Path) -> Result<Manifest, BenchError> {
    let manifest = plan_suite(spec)?;
    fs::create_dir_all(out_dir).map_err(|e| BenchError::io(out_dir, e))?;
    for entry in &manifest.entries {
        let graph =
            entry.spec.generate().map_err(|e| BenchError::InvalidSpec(format!("{}: {e}", entry.instance_id)))?;
        let path = out_dir.join(&entry.file);
        fs::write(&path, write_instance(&graph)).map_err(|e| BenchError::io(&path, e))?;
    }
    let path = out_dir.join(MANIFEST_FILE);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(|e| BenchError::io(&path, e))?;
    Ok(manifest)
}
