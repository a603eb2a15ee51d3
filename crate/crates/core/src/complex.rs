//! Closed triangulated 2- and 3-manifolds.
//!
//! A [`Triangulation`] is validated once at construction (distinct in-range
//! indices, every codimension-one face shared by exactly two top simplices,
//! no isolated vertices) and is read-only afterwards. All adjacency data is
//! derived eagerly so downstream numerical code only performs lookups.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Topological dimension of a triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Two,
    Three,
}

impl Dimension {
    pub fn from_usize(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            other => Err(Error::WrongDimension {
                expected: 2,
                found: other,
            }),
        }
    }

    pub fn as_usize(self) -> usize {
        match self {
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

/// Names accepted by [`builtin_mesh`].
pub const BUILTIN_MESHES: [&str; 5] = [
    "tetra_surface",
    "octa_surface",
    "icosa_surface",
    "boundary_4_simplex",
    "sixteen_cell",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    dim: Dimension,
    vertex_count: usize,
    /// Triangles: the top simplices in dim 2, the faces in dim 3. Sorted.
    triangles: Vec<[usize; 3]>,
    /// Empty in dim 2.
    tetrahedra: Vec<[usize; 4]>,
    edges: Vec<[usize; 2]>,
    neighbors: Vec<Vec<usize>>,
    /// vertex -> indices into the top simplex list
    incidence: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Builds and validates a triangulation from top simplices given as
    /// vertex-index tuples of length `dimension + 1`.
    pub fn new(dimension: usize, vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let dim = Dimension::from_usize(dimension)?;
        let arity = dim.as_usize() + 1;
        if simplices.is_empty() {
            return Err(Error::EmptyComplex);
        }

        let mut tops: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
        for s in simplices {
            if s.len() != arity {
                return Err(Error::WrongDimension {
                    expected: dimension,
                    found: s.len().saturating_sub(1),
                });
            }
            for &v in s {
                if v >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        bound: vertex_count,
                    });
                }
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertexInSimplex { simplex: s.clone() });
            }
            tops.push(sorted);
        }
        {
            let mut seen = tops.clone();
            seen.sort();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateSimplex {
                    simplex: w[0].clone(),
                });
            }
        }

        // Codimension-one faces with their coface counts.
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for s in &tops {
            for skip in 0..arity {
                let ridge: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        if let Some((ridge, &count)) = ridges.iter().find(|(_, &c)| c != 2) {
            return Err(Error::NotClosedManifold {
                kind: if dim == Dimension::Two {
                    "edge"
                } else {
                    "face"
                },
                simplex: ridge.clone(),
                cofaces: count,
            });
        }

        let mut incidence = vec![Vec::new(); vertex_count];
        for (idx, s) in tops.iter().enumerate() {
            for &v in s {
                incidence[v].push(idx);
            }
        }
        if let Some(v) = incidence.iter().position(|inc| inc.is_empty()) {
            return Err(Error::IsolatedVertex { vertex: v });
        }

        let (triangles, tetrahedra) = match dim {
            Dimension::Two => (
                tops.iter().map(|s| [s[0], s[1], s[2]]).collect::<Vec<_>>(),
                Vec::new(),
            ),
            Dimension::Three => (
                ridges.keys().map(|f| [f[0], f[1], f[2]]).collect(),
                tops.iter().map(|s| [s[0], s[1], s[2], s[3]]).collect(),
            ),
        };

        let mut edges: Vec<[usize; 2]> = Vec::new();
        for s in &tops {
            for a in 0..arity {
                for b in (a + 1)..arity {
                    edges.push([s[a], s[b]]);
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut neighbors = vec![Vec::new(); vertex_count];
        for &[i, j] in &edges {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }

        Ok(Triangulation {
            dim,
            vertex_count,
            triangles,
            tetrahedra,
            edges,
            neighbors,
            incidence,
        })
    }

    pub fn from_triangles(vertex_count: usize, triangles: &[[usize; 3]]) -> Result<Self> {
        let tops: Vec<Vec<usize>> = triangles.iter().map(|t| t.to_vec()).collect();
        Self::new(2, vertex_count, &tops)
    }

    pub fn from_tetrahedra(vertex_count: usize, tetrahedra: &[[usize; 4]]) -> Result<Self> {
        let tops: Vec<Vec<usize>> = tetrahedra.iter().map(|t| t.to_vec()).collect();
        Self::new(3, vertex_count, &tops)
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Triangles of the complex: the top simplices in dim 2, the faces in dim 3.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn tetrahedra(&self) -> &[[usize; 4]] {
        &self.tetrahedra
    }

    /// Number of top-dimensional simplices.
    pub fn top_simplex_count(&self) -> usize {
        match self.dim {
            Dimension::Two => self.triangles.len(),
            Dimension::Three => self.tetrahedra.len(),
        }
    }

    /// Top simplices as vertex lists (sorted).
    pub fn top_simplices(&self) -> Vec<Vec<usize>> {
        match self.dim {
            Dimension::Two => self.triangles.iter().map(|t| t.to_vec()).collect(),
            Dimension::Three => self.tetrahedra.iter().map(|t| t.to_vec()).collect(),
        }
    }

    /// Sorted neighbours of `v` in the edge graph (the relation i ∼ j).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Indices of the top simplices containing `v`.
    pub fn incident_simplices(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.edge_index(i, j).is_some()
    }

    /// Position of edge {i, j} in [`Triangulation::edges`].
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { [i, j] } else { [j, i] };
        self.edges.binary_search(&key).ok()
    }

    /// V − E + F for surfaces.
    pub fn euler_characteristic(&self) -> Result<i64> {
        if self.dim != Dimension::Two {
            return Err(Error::WrongDimension {
                expected: 2,
                found: self.dim.as_usize(),
            });
        }
        Ok(self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64)
    }
}

pub fn euler_characteristic(t: &Triangulation) -> Result<i64> {
    t.euler_characteristic()
}

/// One of the meshes listed in [`BUILTIN_MESHES`].
pub fn builtin_mesh(name: &str) -> Result<Triangulation> {
    let mesh = match name {
        "tetra_surface" => {
            Triangulation::from_triangles(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
        }
        "octa_surface" => {
            // 0,1 = ±x; 2,3 = ±y; 4,5 = ±z
            let mut faces = Vec::with_capacity(8);
            for a in 0..2 {
                for b in 2..4 {
                    for c in 4..6 {
                        faces.push([a, b, c]);
                    }
                }
            }
            Triangulation::from_triangles(6, &faces)
        }
        "icosa_surface" => Triangulation::from_triangles(12, &ICOSAHEDRON_FACES),
        "boundary_4_simplex" => Triangulation::from_tetrahedra(
            5,
            &[
                [0, 1, 2, 3],
                [0, 1, 2, 4],
                [0, 1, 3, 4],
                [0, 2, 3, 4],
                [1, 2, 3, 4],
            ],
        ),
        "sixteen_cell" => {
            // vertex order A1 A2 B1 B2 C1 C2 D1 D2
            let mut tets = Vec::with_capacity(16);
            for a in 0..2 {
                for b in 2..4 {
                    for c in 4..6 {
                        for d in 6..8 {
                            tets.push([a, b, c, d]);
                        }
                    }
                }
            }
            Triangulation::from_tetrahedra(8, &tets)
        }
        other => return Err(Error::UnknownMeshName(other.to_string())),
    };
    Ok(mesh.expect("built-in meshes are valid closed manifolds"))
}

const ICOSAHEDRON_FACES: [[usize; 3]; 20] = [
    [0, 11, 5],
    [0, 5, 1],
    [0, 1, 7],
    [0, 7, 10],
    [0, 10, 11],
    [1, 5, 9],
    [5, 11, 4],
    [11, 10, 2],
    [10, 7, 6],
    [7, 1, 8],
    [3, 9, 4],
    [3, 4, 2],
    [3, 2, 6],
    [3, 6, 8],
    [3, 8, 9],
    [4, 9, 5],
    [2, 4, 11],
    [6, 2, 10],
    [8, 6, 7],
    [9, 8, 1],
];
