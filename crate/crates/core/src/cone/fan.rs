use std::collections::{BTreeSet, HashMap};

use super::fm::has_semipositive_point;
use super::gencone::ContainMode;
use super::simplicial::SimplicialCone;
use crate::error::{Error, Result};
use crate::lattice::{kernel, IntMatrix, IntVec, LatticeHom};

/// A finite collection of simplicial cones closed under faces, any two of
/// which meet in a common face.
///
/// Cones are addressed by index. Each cone is a sorted set of ray indices;
/// cones are ordered by dimension and then by ray indices, so index 0 is
/// always the zero cone.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<IntVec>,
    ray_sets: Vec<Vec<usize>>,
    cones: Vec<SimplicialCone>,
    index: HashMap<Vec<usize>, usize>,
    maximal: Vec<usize>,
}

impl Fan {
    /// The fan of all faces of the given cones. Rays are numbered in
    /// lexicographic order.
    pub fn from_max_cones(d: usize, max_cones: &[SimplicialCone]) -> Result<Fan> {
        let rays: Vec<IntVec> = max_cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let sets: Vec<Vec<usize>> = max_cones
            .iter()
            .map(|c| {
                c.rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray collected above"))
                    .collect()
            })
            .collect();
        for c in max_cones {
            if c.ambient_dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: c.ambient_dim(),
                });
            }
        }
        Fan::from_ray_indices(d, rays, &sets)
    }

    /// The fan of all faces of the cones spanned by the given ray index
    /// sets. Rays keep their numbering; they are made primitive.
    pub fn from_ray_indices(d: usize, rays: Vec<IntVec>, cones: &[Vec<usize>]) -> Result<Fan> {
        let mut prim = Vec::with_capacity(rays.len());
        for r in &rays {
            r.check_dim(d)?;
            if r.is_zero() {
                return Err(Error::ZeroRay);
            }
            let p = r.primitive();
            if prim.contains(&p) {
                return Err(Error::DuplicateRay(p.to_string()));
            }
            prim.push(p);
        }
        let rays = prim;

        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        all.insert((0, Vec::new()));
        for c in cones {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::ConeNotInFan(format!("ray index {bad} out of range")));
            }
            if c.len() > 31 {
                return Err(Error::DependentRays);
            }
            for mask in 0u32..1 << c.len() {
                let sub: Vec<usize> = (0..c.len()).filter(|i| mask & (1 << i) != 0).map(|i| c[i]).collect();
                all.insert((sub.len(), sub));
            }
        }
        let ray_sets: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let mut cone_data = Vec::with_capacity(ray_sets.len());
        for s in &ray_sets {
            let rs: Vec<IntVec> = s.iter().map(|&i| rays[i].clone()).collect();
            cone_data.push(SimplicialCone::new(d, &rs)?);
        }
        let index: HashMap<Vec<usize>, usize> = ray_sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let maximal: Vec<usize> = (0..ray_sets.len())
            .filter(|&i| {
                !ray_sets
                    .iter()
                    .any(|t| t.len() > ray_sets[i].len() && is_subset(&ray_sets[i], t))
            })
            .collect();

        let fan = Fan {
            ambient_dim: d,
            rays,
            ray_sets,
            cones: cone_data,
            index,
            maximal,
        };
        fan.check_intersections()?;
        Ok(fan)
    }

    fn check_intersections(&self) -> Result<()> {
        for (a, &i) in self.maximal.iter().enumerate() {
            for &j in &self.maximal[a + 1..] {
                if !self.meet_in_common_face(i, j) {
                    return Err(Error::NotAFan {
                        first: self.key(i),
                        second: self.key(j),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether the cones `i` and `j` intersect exactly in the cone over
    /// their shared rays.
    fn meet_in_common_face(&self, i: usize, j: usize) -> bool {
        let (si, sj) = (&self.ray_sets[i], &self.ray_sets[j]);
        // Points Σ a_k r_k = Σ b_l r_l with a, b >= 0: the intersection is
        // the common face iff no such point has a_k > 0 at an unshared ray.
        let strict: Vec<usize> = (0..si.len()).filter(|&k| !sj.contains(&si[k])).collect();
        if strict.is_empty() {
            return true;
        }
        let mut cols: Vec<IntVec> = si.iter().map(|&k| self.rays[k].clone()).collect();
        cols.extend(sj.iter().map(|&l| -&self.rays[l]));
        let m = IntMatrix::from_rows(self.ambient_dim, &cols)
            .expect("rays have ambient length")
            .transpose();
        let ker = kernel(&m).basis_vectors();
        !has_semipositive_point(&ker, cols.len(), &strict)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cones(&self) -> &[SimplicialCone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &SimplicialCone {
        &self.cones[i]
    }

    pub fn ray_indices(&self, i: usize) -> &[usize] {
        &self.ray_sets[i]
    }

    /// Comma-joined ray indices, e.g. `"0,1"`; the zero cone is `""`.
    pub fn key(&self, i: usize) -> String {
        self.ray_sets[i]
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn find(&self, ray_indices: &[usize]) -> Option<usize> {
        let mut s = ray_indices.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    pub fn find_key(&self, key: &str) -> Option<usize> {
        if key.trim().is_empty() {
            return self.find(&[]);
        }
        let ids: std::result::Result<Vec<usize>, _> = key.split(',').map(|s| s.trim().parse::<usize>()).collect();
        self.find(&ids.ok()?)
    }

    pub fn find_cone(&self, c: &SimplicialCone) -> Option<usize> {
        let ids: Option<Vec<usize>> = c.rays().iter().map(|r| self.rays.iter().position(|x| x == r)).collect();
        self.find(&ids?)
    }

    pub fn maximal_cones(&self) -> &[usize] {
        &self.maximal
    }

    /// Whether cone `tau` is a face of cone `sigma`.
    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        is_subset(&self.ray_sets[tau], &self.ray_sets[sigma])
    }

    /// Indices of all faces of cone `sigma`, including itself.
    pub fn faces_of(&self, sigma: usize) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.is_face(t, sigma)).collect()
    }

    /// Smallest cone containing all `points`, if any.
    pub fn minimal_cone_containing(&self, points: &[IntVec]) -> Option<usize> {
        (0..self.len()).find(|&i| {
            points
                .iter()
                .all(|p| self.cones[i].gen_cone().contains_unchecked(p, ContainMode::Closed))
        })
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Result of [`fan_hom_check`]: for each maximal cone of the source, the
/// smallest target cone containing its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanHomCertificate {
    pub ok: bool,
    pub images: Vec<(usize, Option<usize>)>,
}

/// Whether `φ` maps every maximal cone of `source` into a cone of `target`.
pub fn fan_hom_check(phi: &LatticeHom, source: &Fan, target: &Fan) -> Result<FanHomCertificate> {
    if phi.source_dim() != source.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: source.ambient_dim(),
            found: phi.source_dim(),
        });
    }
    if phi.target_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: target.ambient_dim(),
            found: phi.target_dim(),
        });
    }
    let mut images = Vec::with_capacity(source.maximal_cones().len());
    for &s in source.maximal_cones() {
        let img: Vec<IntVec> = source
            .cone(s)
            .rays()
            .iter()
            .map(|r| phi.apply(r))
            .collect::<Result<_>>()?;
        images.push((s, target.minimal_cone_containing(&img)));
    }
    Ok(FanHomCertificate {
        ok: images.iter().all(|(_, t)| t.is_some()),
        images,
    })
}
