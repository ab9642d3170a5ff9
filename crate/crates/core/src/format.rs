//! JSON file format for stratified spaces and vertex lists.
//!
//! Vertices are named by strings; internally the `i`-th entry of
//! `vertices` becomes vertex id `i`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::stratified::{SpacePair, StratifiedSpace, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub name: String,
    pub dimension: usize,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<usize>>,
    pub depth: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation_note: Option<String>,
}

/// A space read from a file, with its vertex names.
#[derive(Clone, Debug)]
pub struct LoadedSpace {
    pub space: StratifiedSpace,
    pub names: Vec<String>,
}

impl LoadedSpace {
    pub fn vertex(&self, name: &str) -> Result<u32> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {name:?}")))
    }

    pub fn vertex_set(&self, names: &[String]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n)).collect()
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

impl SpaceFile {
    pub fn from_space(x: &StratifiedSpace) -> Self {
        let verts: Vec<u32> = x.complex().vertices().collect();
        let index: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let maximal_simplices =
            x.complex().maximal_simplices().iter().map(|s| s.vertices().iter().map(|v| index[v]).collect()).collect();
        let boundary = x.boundary_vertices();
        SpaceFile {
            name: x.name().to_string(),
            dimension: x.dim(),
            vertices: verts.iter().map(|v| v.to_string()).collect(),
            maximal_simplices,
            depth: verts.iter().map(|&v| (v.to_string(), x.depth(v) as i64)).collect(),
            boundary_vertices: (!boundary.is_empty()).then(|| boundary.iter().map(|v| v.to_string()).collect()),
            orientation_note: None,
        }
    }

    /// Checks the file against its declared structure and builds the space.
    /// Each listed simplex must use distinct, listed vertices and must not
    /// be a face of another listed simplex; every vertex needs a depth.
    pub fn to_space(&self) -> Result<LoadedSpace> {
        let n = self.vertices.len();
        let mut seen = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(j) = seen.insert(v.as_str(), i) {
                return Err(invalid(format!("vertex name {v:?} listed at {j} and {i}")));
            }
        }
        let mut simplices: Vec<Vec<u32>> = Vec::with_capacity(self.maximal_simplices.len());
        for s in &self.maximal_simplices {
            if let Some(&i) = s.iter().find(|&&i| i >= n) {
                return Err(invalid(format!("simplex {s:?} uses vertex index {i}, but only {n} vertices are listed")));
            }
            let mut v: Vec<u32> = s.iter().map(|&i| i as u32).collect();
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("simplex {s:?} repeats a vertex")));
            }
            if v.is_empty() {
                return Err(invalid("empty simplex"));
            }
            simplices.push(v);
        }
        for (a, sa) in simplices.iter().enumerate() {
            for (b, sb) in simplices.iter().enumerate() {
                if a != b && sa.iter().all(|v| sb.contains(v)) && (sa.len() < sb.len() || a > b) {
                    return Err(invalid(format!(
                        "simplex {:?} is a face of simplex {:?}, not maximal",
                        self.maximal_simplices[a], self.maximal_simplices[b]
                    )));
                }
            }
        }
        let complex = SimplicialComplex::from_maximal(simplices)?;
        if let Some(v) = (0..n as u32).find(|&v| !complex.has_vertex(v)) {
            return Err(invalid(format!("vertex {:?} lies in no simplex", self.vertices[v as usize])));
        }
        if complex.dim() != Some(self.dimension) {
            return Err(invalid(format!("declared dimension {} but the complex has dimension {:?}", self.dimension, complex.dim())));
        }
        for k in self.depth.keys() {
            if !seen.contains_key(k.as_str()) {
                return Err(invalid(format!("depth given for unknown vertex {k:?}")));
            }
        }
        let depths: Vec<(u32, i64)> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| self.depth.get(v).map(|&d| (i as u32, d)).ok_or(Error::MissingDepth(i as u32)))
            .collect::<Result<_>>()?;
        let mut space = StratifiedSpace::attach_filtration(self.name.clone(), complex, depths)?;
        if let Some(b) = &self.boundary_vertices {
            let ids: Vec<u32> = b
                .iter()
                .map(|v| seen.get(v.as_str()).map(|&i| i as u32).ok_or_else(|| invalid(format!("unknown boundary vertex {v:?}"))))
                .collect::<Result<_>>()?;
            space = space.declare_boundary(ids)?;
        }
        Ok(LoadedSpace { space, names: self.vertices.clone() })
    }
}

pub fn parse_space(text: &str) -> Result<LoadedSpace> {
    let f: SpaceFile = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
    f.to_space()
}

pub fn read_space(path: &Path) -> Result<LoadedSpace> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    parse_space(&text)
}

pub fn write_space(path: &Path, x: &StratifiedSpace) -> Result<()> {
    write_json(path, &SpaceFile::from_space(x))
}

/// A vertex list file: a JSON array of vertex names.
pub fn read_vertex_list(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Writes a pair as the space file and a `<stem>.pair.json` vertex list
/// next to it. Returns the path of the vertex list.
pub fn write_pair(path: &Path, pair: &SpacePair) -> Result<std::path::PathBuf> {
    write_space(path, pair.space())?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("pair");
    let lpath = path.with_file_name(format!("{stem}.pair.json"));
    let names: Vec<String> = pair.removed().iter().map(|v| v.to_string()).collect();
    write_json(&lpath, &names)?;
    Ok(lpath)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| invalid(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn round_trip_keeps_structure() {
        let x = constructions::outer_pinched_solid();
        let f = SpaceFile::from_space(&x);
        let text = serde_json::to_string(&f).unwrap();
        let back = parse_space(&text).unwrap();
        assert_eq!(back.space.complex().f_vector(), x.complex().f_vector());
        assert_eq!(back.space.boundary_vertices(), x.boundary_vertices());
        assert_eq!(SpaceFile::from_space(&back.space), f);
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"name":"e","dimension":1,"vertices":["a","b"],"maximal_simplices":[[0,1]],
            "depth":{"a":1,"b":1},"colour":"red"}"#;
        assert!(matches!(parse_space(text), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_dangling_and_non_maximal_simplices() {
        let dangling = r#"{"name":"e","dimension":1,"vertices":["a","b"],"maximal_simplices":[[0,2]],
            "depth":{"a":1,"b":1}}"#;
        let err = parse_space(dangling).unwrap_err().to_string();
        assert!(err.contains("index 2"), "{err}");
        let face = r#"{"name":"e","dimension":1,"vertices":["a","b"],"maximal_simplices":[[0,1],[1]],
            "depth":{"a":1,"b":1}}"#;
        assert!(parse_space(face).unwrap_err().to_string().contains("not maximal"));
    }

    #[test]
    fn missing_depth() {
        let text = r#"{"name":"e","dimension":1,"vertices":["a","b"],"maximal_simplices":[[0,1]],
            "depth":{"a":1}}"#;
        assert!(matches!(parse_space(text), Err(Error::MissingDepth(1))));
    }
}
