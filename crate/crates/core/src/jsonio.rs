//! Wire formats for instances and corpora: JSON with every coordinate an
//! exact rational string, stable field order, no floating point anywhere.

use serde::{Deserialize, Serialize};

use crate::antiblocking::{AntiBlockingBody, DiffMode};
use crate::coneab::{CABBody, PolyhedralCone};
use crate::geom::{Point, Polytope};
use crate::posets::{Permutation, Poset};
use crate::rat::{format_rat, parse_rat};
use crate::{Error, Result};

pub fn point_strings(p: &Point) -> Vec<String> {
    p.coords().iter().map(format_rat).collect()
}

pub fn points_strings(pts: &[Point]) -> Vec<Vec<String>> {
    pts.iter().map(point_strings).collect()
}

pub fn point_from_strings(coords: &[String]) -> Result<Point> {
    let c = coords
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Point::new(c))
}

pub fn points_from_strings(rows: &[Vec<String>]) -> Result<Vec<Point>> {
    rows.iter().map(|r| point_from_strings(r)).collect()
}

pub fn mode_string(mode: DiffMode) -> &'static str {
    match mode {
        DiffMode::Sum => "sum",
        DiffMode::Hull => "hull",
    }
}

pub fn mode_from_string(s: &str) -> Result<DiffMode> {
    match s {
        "sum" => Ok(DiffMode::Sum),
        "hull" => Ok(DiffMode::Hull),
        other => Err(Error::Config(format!(
            "unknown difference mode {other:?}; expected \"sum\" or \"hull\""
        ))),
    }
}

/// Vertex-list form of an anti-blocking body.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BodyDto {
    pub vertices: Vec<Vec<String>>,
}

impl BodyDto {
    pub fn from_body(k: &AntiBlockingBody) -> BodyDto {
        BodyDto {
            vertices: points_strings(k.polytope().vertices()),
        }
    }

    pub fn to_body(&self, n: usize) -> Result<AntiBlockingBody> {
        let pts = points_from_strings(&self.vertices)?;
        AntiBlockingBody::new(Polytope::hull(n, &pts)?)
    }
}

/// A signed difference `K1 - K2` (mode "sum") or `K1 ∨ -K2` (mode "hull"),
/// stored through the vertex lists of its two anti-blocking parents.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DifferenceDto {
    pub mode: String,
    pub positive: Vec<Vec<String>>,
    pub negative: Vec<Vec<String>>,
}

impl DifferenceDto {
    pub fn new(k1: &AntiBlockingBody, k2: &AntiBlockingBody, mode: DiffMode) -> DifferenceDto {
        DifferenceDto {
            mode: mode_string(mode).to_string(),
            positive: points_strings(k1.polytope().vertices()),
            negative: points_strings(k2.polytope().vertices()),
        }
    }

    pub fn parents(&self, n: usize) -> Result<(AntiBlockingBody, AntiBlockingBody, DiffMode)> {
        let k1 = BodyDto {
            vertices: self.positive.clone(),
        }
        .to_body(n)?;
        let k2 = BodyDto {
            vertices: self.negative.clone(),
        }
        .to_body(n)?;
        Ok((k1, k2, mode_from_string(&self.mode)?))
    }
}

/// Generator form of a pointed full-dimensional cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeDto {
    pub dim: usize,
    pub generators: Vec<Vec<String>>,
}

impl ConeDto {
    pub fn from_cone(c: &PolyhedralCone) -> ConeDto {
        ConeDto {
            dim: c.dim(),
            generators: points_strings(c.generators()),
        }
    }

    pub fn to_cone(&self) -> Result<PolyhedralCone> {
        let rays = points_from_strings(&self.generators)?;
        PolyhedralCone::from_generators(self.dim, &rays)
    }
}

/// A dual pair of cone bodies: `k` lives over the cone, `l` over its dual.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConePairDto {
    pub cone: ConeDto,
    pub k: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
}

impl ConePairDto {
    pub fn new(k: &CABBody, l: &CABBody) -> ConePairDto {
        ConePairDto {
            cone: ConeDto::from_cone(k.cone()),
            k: points_strings(k.body().vertices()),
            l: points_strings(l.body().vertices()),
        }
    }

    pub fn to_bodies(&self) -> Result<(CABBody, CABBody)> {
        let cone = self.cone.to_cone()?;
        let dual = cone.dual()?;
        let n = cone.dim();
        let k = CABBody::new(cone, Polytope::hull(n, &points_from_strings(&self.k)?)?)?;
        let l = CABBody::new(dual, Polytope::hull(n, &points_from_strings(&self.l)?)?)?;
        Ok((k, l))
    }
}

/// Cover relations on 0-based elements; the closure is recomputed on read.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetDto {
    pub n: usize,
    pub relations: Vec<(usize, usize)>,
}

impl PosetDto {
    pub fn from_poset(p: &Poset) -> PosetDto {
        PosetDto {
            n: p.n(),
            relations: p.cover_relations(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_relations(self.n, &self.relations)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermutationDto {
    pub one_line: Vec<usize>,
}

impl PermutationDto {
    pub fn from_permutation(pi: &Permutation) -> PermutationDto {
        PermutationDto {
            one_line: pi.one_line().to_vec(),
        }
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::new(self.one_line.clone())
    }
}

/// A corpus file: the generating parameters plus the instance list.
/// Instance ids are implicit in position.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Corpus<T> {
    pub kind: String,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub instances: Vec<T>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antiblocking::down_closure;
    use crate::coneab::c_down_closure;
    use crate::geom::{pt, ptq};

    #[test]
    fn body_round_trip_keeps_exact_coordinates() {
        let k = down_closure(2, &[pt(&[1, 1]), ptq(&[(3, 2), (1, 2)])]).unwrap();
        let dto = BodyDto::from_body(&k);
        assert!(dto.vertices.contains(&vec!["3/2".to_string(), "1/2".to_string()]));
        let text = serde_json::to_string(&dto).unwrap();
        let back: BodyDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_body(2).unwrap().polytope(), k.polytope());
    }

    #[test]
    fn difference_round_trip() {
        let k = down_closure(2, &[pt(&[1, 1])]).unwrap();
        let t = down_closure(2, &[pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        let dto = DifferenceDto::new(&k, &t, DiffMode::Hull);
        let (k2, t2, mode) = dto.parents(2).unwrap();
        assert_eq!(k2.polytope(), k.polytope());
        assert_eq!(t2.polytope(), t.polytope());
        assert_eq!(mode, DiffMode::Hull);
        assert!(mode_from_string("spin").is_err());
    }

    #[test]
    fn cone_pair_round_trip() {
        let cone = PolyhedralCone::from_generators(2, &[pt(&[1, 0]), pt(&[1, 1])]).unwrap();
        let k = c_down_closure(&cone, &[pt(&[2, 1])]).unwrap();
        let dual = cone.dual().unwrap();
        let l = c_down_closure(&dual, dual.generators()).unwrap();
        let dto = ConePairDto::new(&k, &l);
        let (k2, l2) = dto.to_bodies().unwrap();
        assert_eq!(&k2, &k);
        assert_eq!(&l2, &l);
    }

    #[test]
    fn poset_and_permutation_round_trips() {
        let p = Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let dto = PosetDto::from_poset(&p);
        // covers only, not the closure
        assert_eq!(dto.relations.len(), 3);
        assert_eq!(dto.to_poset().unwrap(), p);

        let pi = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let back = PermutationDto::from_permutation(&pi).to_permutation().unwrap();
        assert_eq!(back, pi);
    }

    #[test]
    fn corpus_serialization_is_stable() {
        let corpus = Corpus {
            kind: "permutation".to_string(),
            n: 2,
            count: 1,
            seed: 7,
            instances: vec![PermutationDto {
                one_line: vec![2, 1],
            }],
        };
        let a = serde_json::to_string_pretty(&corpus).unwrap();
        let b = serde_json::to_string_pretty(&corpus).unwrap();
        assert_eq!(a, b);
        assert!(a.find("\"kind\"").unwrap() < a.find("\"instances\"").unwrap());
    }
}
