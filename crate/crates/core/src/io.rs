//! The MNF1 field format and trajectory directories.
//!
//! MNF1 is one ASCII header line `MNF1 n m_1 … m_n L_1 … L_n components`
//! followed by little-endian `f64` samples, component-major, axis 1 fastest.
//! The boundary kind is not stored; readers supply it.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::MixedExponents;
use crate::field::{Gradient, ScalarField, VectorField};
use crate::grid::{Boundary, TensorGrid};
use crate::mild::{SolverConfig, Trajectory};

const MAGIC: &str = "MNF1";

pub fn write_mnf<W: Write>(out: &mut W, field: &VectorField) -> Result<()> {
    let grid = field.grid();
    let mut header = format!("{MAGIC} {}", grid.n());
    for m in grid.counts() {
        header.push_str(&format!(" {m}"));
    }
    for l in grid.half_widths() {
        header.push_str(&format!(" {l:?}"));
    }
    header.push_str(&format!(" {}\n", field.len()));
    out.write_all(header.as_bytes())?;
    let mut bytes = Vec::with_capacity(8 * grid.len() * field.len());
    for c in field.components() {
        for v in c.data() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    }
    out.write_all(&bytes)?;
    Ok(())
}

pub fn read_mnf<R: Read>(input: R, boundary: Boundary) -> Result<VectorField> {
    let mut reader = BufReader::new(input);
    let mut line = String::new();
    reader.read_line(&mut line)?;
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some(MAGIC) => {}
        other => return Err(Error::Format(format!("unknown magic {other:?}"))),
    }
    let bad = |what: &str| Error::Format(format!("malformed header: {what}"));
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad("dimension"))?;
    let counts = (0..n)
        .map(|_| tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("count")))
        .collect::<Result<Vec<usize>>>()?;
    let widths = (0..n)
        .map(|_| tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("half-width")))
        .collect::<Result<Vec<f64>>>()?;
    let components: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad("components"))?;
    if tokens.next().is_some() || components == 0 {
        return Err(bad("trailing tokens or zero components"));
    }
    let grid = TensorGrid::new(widths, counts, boundary)?;
    let mut comps = Vec::with_capacity(components);
    let mut buf = vec![0u8; 8 * grid.len()];
    for _ in 0..components {
        reader
            .read_exact(&mut buf)
            .map_err(|_| Error::Format("truncated sample block".into()))?;
        let data = buf
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().expect("8-byte chunk")))
            .collect();
        comps.push(ScalarField::new(grid.clone(), data)?);
    }
    let mut rest = [0u8; 1];
    if reader.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after samples".into()));
    }
    VectorField::new(comps)
}

pub fn save_mnf(path: &Path, field: &VectorField) -> Result<()> {
    let mut f = fs::File::create(path)?;
    write_mnf(&mut f, field)
}

pub fn load_mnf(path: &Path, boundary: Boundary) -> Result<VectorField> {
    read_mnf(fs::File::open(path)?, boundary)
}

/// `meta.json` of a trajectory directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub format: String,
    pub p: MixedExponents,
    pub q: MixedExponents,
    pub delta: f64,
    pub nodes: Vec<f64>,
    pub grid: TensorGrid,
}

const TRAJECTORY_FORMAT: &str = "mnns-trajectory-1";

fn node_name(kind: &str, i: Option<usize>) -> String {
    match i {
        Some(i) => format!("{kind}_{i:04}.mnf"),
        None => format!("{kind}_init.mnf"),
    }
}

/// Writes `meta.json` plus `state_XXXX.mnf` and `gradient_XXXX.mnf` per node;
/// the `0⁺` value goes to `state_init.mnf` and `gradient_init.mnf`.
/// Gradient files hold `n²` components with `∂_j u_i` at index `i n + j`.
pub fn save_trajectory(dir: &Path, traj: &Trajectory, cfg: &SolverConfig) -> Result<()> {
    fs::create_dir_all(dir)?;
    let meta = TrajectoryMeta {
        format: TRAJECTORY_FORMAT.into(),
        p: cfg.p.clone(),
        q: cfg.q.clone(),
        delta: cfg.delta(),
        nodes: traj.times().to_vec(),
        grid: traj.grid().clone(),
    };
    let json = serde_json::to_string_pretty(&meta).map_err(|e| Error::Format(e.to_string()))?;
    fs::write(dir.join("meta.json"), json)?;
    let write_pair = |i: Option<usize>, s: &VectorField, g: &Gradient| -> Result<()> {
        save_mnf(&dir.join(node_name("state", i)), s)?;
        save_mnf(&dir.join(node_name("gradient", i)), &VectorField::new(g.entries().to_vec())?)
    };
    write_pair(None, traj.initial(), traj.initial_gradient())?;
    for (i, (s, g)) in traj.states().iter().zip(traj.gradients()).enumerate() {
        write_pair(Some(i), s, g)?;
    }
    Ok(())
}

pub fn load_trajectory(dir: &Path) -> Result<(TrajectoryMeta, Trajectory)> {
    let text = fs::read_to_string(dir.join("meta.json"))?;
    let meta: TrajectoryMeta = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    if meta.format != TRAJECTORY_FORMAT {
        return Err(Error::Format(format!("unknown trajectory format {:?}", meta.format)));
    }
    let boundary = meta.grid.boundary();
    let n = meta.grid.n();
    let load_pair = |i: Option<usize>| -> Result<(VectorField, Gradient)> {
        let s = load_mnf(&dir.join(node_name("state", i)), boundary)?;
        let g = load_mnf(&dir.join(node_name("gradient", i)), boundary)?;
        if s.grid() != &meta.grid {
            return Err(Error::GridMismatch);
        }
        Ok((s, Gradient::new(n, g.into_components())?))
    };
    let initial = load_pair(None)?;
    let nodes = (0..meta.nodes.len())
        .map(|i| load_pair(Some(i)))
        .collect::<Result<Vec<_>>>()?;
    let traj = Trajectory::from_parts(meta.nodes.clone(), initial, nodes)?;
    Ok((meta, traj))
}
