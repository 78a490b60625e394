use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cohomology::{cocycle_class, cohomology_group, extension_class, CohomologyClass};
use crate::error::{Error, Result};
use crate::fock::{schwinger_term, FockSpace};
use crate::groupoid::{
    action_groupoid, centrality_check, extension_diagnostics, glue_local_data, CocycleJson, CoverJson,
    CyclicCocycle, FiniteGroupoid, GroupoidJson, PhaseCocycle,
};
use crate::operator::{matrix_from_json, matrix_to_json, Polarization};
use crate::random;
use crate::regdet::{det_p, omega_p, UnitalPerturbation};

use super::report::InputDigest;

/// Largest matrix dimension `generate` will emit.
pub const MAX_GENERATED_DIM: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Detp,
    Omega,
    Schwinger,
    H2,
    Glue,
}

/// A single computation and the files it reads.
#[derive(Clone, Debug, PartialEq)]
pub enum ComputeRequest {
    /// `det_p(1 + A)` for the matrix `A` in the file.
    Detp { matrix: PathBuf, p: u32 },
    /// `ω_p(A, B)` for perturbations `A`, `B`.
    Omega { a: PathBuf, b: PathBuf, p: u32 },
    /// Schwinger term of `X`, `Y` under `{"dim":m,"plus_dim":k}`.
    Schwinger { x: PathBuf, y: PathBuf, polarization: PathBuf },
    /// `H^degree` of a groupoid, optionally with the class of a cocycle.
    H2 { groupoid: PathBuf, modulus: u32, degree: usize, cocycle: Option<PathBuf> },
    /// Glue cover data into a global extension and report its class.
    Glue { data: PathBuf, modulus: Option<u32> },
}

impl ComputeRequest {
    pub fn quantity(&self) -> Quantity {
        match self {
            ComputeRequest::Detp { .. } => Quantity::Detp,
            ComputeRequest::Omega { .. } => Quantity::Omega,
            ComputeRequest::Schwinger { .. } => Quantity::Schwinger,
            ComputeRequest::H2 { .. } => Quantity::H2,
            ComputeRequest::Glue { .. } => Quantity::Glue,
        }
    }
}

struct Inputs(Vec<Value>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
        self.0.push(json!({
            "path": path.display().to_string(),
            "sha256": InputDigest::new().text(&text).finish(),
        }));
        Ok(text)
    }

    fn parse<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
    }

    fn matrix(&mut self, path: &Path) -> Result<crate::operator::CMatrix> {
        let text = self.read(path)?;
        matrix_from_json(&text).map_err(|e| match e {
            Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

#[derive(Deserialize)]
struct PolarizationJson {
    dim: usize,
    plus_dim: usize,
}

fn cohomology_json(c: &CohomologyClass) -> Value {
    serde_json::to_value(c).expect("serializable")
}

/// Runs one computation; the result echoes every input path with its digest.
pub fn compute(req: &ComputeRequest) -> Result<Value> {
    let mut inputs = Inputs(Vec::new());
    let (name, result) = match req {
        ComputeRequest::Detp { matrix, p } => {
            let a = inputs.matrix(matrix)?;
            let d = det_p(&a, *p)?;
            ("detp", serde_json::to_value(d).expect("serializable"))
        }
        ComputeRequest::Omega { a, b, p } => {
            let a = UnitalPerturbation::new(inputs.matrix(a)?)?;
            let b = UnitalPerturbation::new(inputs.matrix(b)?)?;
            let w = omega_p(&a, &b, *p)?;
            ("omega", json!({ "value": [w.re, w.im], "order": p }))
        }
        ComputeRequest::Schwinger { x, y, polarization } => {
            let x = inputs.matrix(x)?;
            let y = inputs.matrix(y)?;
            let pol: PolarizationJson = inputs.parse(polarization)?;
            let space = FockSpace::new(pol.dim, Polarization::new(pol.dim, pol.plus_dim)?)?;
            let t = schwinger_term(&space, &x, &y)?;
            ("schwinger", json!({ "value": [t.value.re, t.value.im], "residue": t.residue }))
        }
        ComputeRequest::H2 { groupoid, modulus, degree, cocycle } => {
            let g = FiniteGroupoid::try_from(inputs.parse::<GroupoidJson>(groupoid)?)?;
            let result = match cocycle {
                Some(path) => {
                    if *degree != 2 {
                        return Err(Error::Domain("a cocycle file gives a degree-2 class".into()));
                    }
                    let c = CyclicCocycle::try_from(inputs.parse::<CocycleJson>(path)?)?;
                    if c.modulus() != *modulus {
                        return Err(Error::Domain(format!(
                            "cocycle modulus {} differs from --modulus {modulus}",
                            c.modulus()
                        )));
                    }
                    cocycle_class(&g, &PhaseCocycle::Cyclic(c))?
                }
                None => {
                    let h = cohomology_group(&g, *degree, *modulus)?;
                    CohomologyClass {
                        degree: *degree,
                        modulus: *modulus,
                        class: vec![0; h.invariant_factors.len()],
                        invariant_factors: h.invariant_factors,
                    }
                }
            };
            ("h2", cohomology_json(&result))
        }
        ComputeRequest::Glue { data, modulus } => {
            let cover: CoverJson = inputs.parse(data)?;
            let modulus = modulus
                .or(cover.modulus)
                .ok_or_else(|| Error::Domain("no modulus given on the command line or in the cover".into()))?;
            let data = cover.into_data()?;
            let ext = glue_local_data(&data, modulus)?;
            let base = action_groupoid(&data.action, &data.group)?;
            let class = extension_class(&ext)?;
            (
                "glue",
                json!({
                    "objects": base.n_objects(),
                    "base_arrows": base.n_arrows(),
                    "total_arrows": ext.total().n_arrows(),
                    "modulus": modulus,
                    "centrality_violation": centrality_check(&ext),
                    "diagnostic_failures": extension_diagnostics(&ext),
                    "cocycle": serde_json::to_value(CocycleJson::from(&ext.multiplication_cocycle()?)).expect("serializable"),
                    "class": cohomology_json(&class),
                }),
            )
        }
    };
    Ok(json!({ "quantity": name, "inputs": inputs.0, "result": result }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    RandomHermitian,
    RandomUnital,
    RandomActionGroupoid,
    RefinedCover,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerateRequest {
    pub kind: InstanceKind,
    pub seed: u64,
    /// Matrix dimension for the matrix kinds.
    pub dim: usize,
    /// Phase modulus for covers.
    pub modulus: u32,
    /// Largest group order for the groupoid kinds.
    pub max_order: usize,
    /// Largest number of points acted on.
    pub max_points: usize,
}

impl GenerateRequest {
    pub fn new(kind: InstanceKind, seed: u64) -> Self {
        GenerateRequest { kind, seed, dim: 4, modulus: 4, max_order: 8, max_points: 6 }
    }
}

/// A generated instance as JSON text in the owning module's format.
#[derive(Clone, Debug, PartialEq)]
pub struct Generated {
    pub kind: InstanceKind,
    pub contents: String,
}

/// Deterministic in the request: equal requests give byte-identical output.
pub fn generate(req: &GenerateRequest) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let matrix_dim = || {
        if req.dim == 0 || req.dim > MAX_GENERATED_DIM {
            Err(Error::Capacity(req.dim))
        } else {
            Ok(req.dim)
        }
    };
    if req.max_points * req.max_order > crate::groupoid::MAX_ARROWS {
        return Err(Error::Capacity(req.max_points * req.max_order));
    }
    let contents = match req.kind {
        InstanceKind::RandomHermitian => matrix_to_json(&random::hermitian(&mut rng, matrix_dim()?)),
        InstanceKind::RandomUnital => {
            // Stored as the perturbation A of the invertible operator 1 + A.
            let n = matrix_dim()?;
            matrix_to_json(&random::unital(&mut rng, n, 0.5).shift_identity(crate::operator::C64::new(-1.0, 0.0)))
        }
        InstanceKind::RandomActionGroupoid => {
            let kind = random::group_kind(&mut rng, req.max_order)?;
            let g = kind.build()?;
            let act = random::action(&mut rng, &g, req.max_points)?;
            serde_json::to_string(&GroupoidJson::from(&action_groupoid(&act, &g)?))?
        }
        InstanceKind::RefinedCover => {
            if req.modulus < 2 {
                return Err(Error::Domain(format!("modulus {} must be at least 2", req.modulus)));
            }
            let inst = random::refined_cover(&mut rng, req.max_order, req.max_points, req.modulus)?;
            serde_json::to_string(&CoverJson::from_data(&inst.data, Some(req.modulus)))?
        }
    };
    Ok(Generated { kind: req.kind, contents })
}
