//! Seeded instance corpora. Every corpus is a pure function of
//! `(n, count, seed)`: instance `i` draws from its own rng stream, so the
//! corpora are reproducible instance by instance and safe to generate under
//! any parallel schedule. The boundary instances each suite must see occupy
//! the first slots.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::antiblocking::{down_closure, AntiBlockingBody, DiffMode};
use crate::coneab::{c_down_closure, CABBody, PolyhedralCone};
use crate::geom::{pt, Point};
use crate::posets::{DoublePoset, Permutation, Poset};
use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// Instance-count request: a fixed number of random instances on top of the
/// mandatory ones, or the whole family for exhaustive permutation corpora.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountSpec {
    Fixed(usize),
    All,
}

impl std::str::FromStr for CountSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CountSpec> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(CountSpec::All);
        }
        s.parse::<usize>()
            .map(CountSpec::Fixed)
            .map_err(|_| Error::Config(format!("count must be a number or \"all\", got {s:?}")))
    }
}

const RESAMPLE_TRIES: usize = 64;

// Stream salts: one namespace per draw site, so adding a corpus never
// perturbs another.
const SALT_BODY: u64 = 1;
const SALT_BODY_SECOND: u64 = 2;
const SALT_DIFF: u64 = 3;
const SALT_DIFF_SECOND: u64 = 4;
const SALT_POSET: u64 = 5;
const SALT_POSET_SECOND: u64 = 6;
const SALT_PERM: u64 = 7;
const SALT_PERM_SECOND: u64 = 8;
const SALT_BODY_THIRD: u64 = 9;
const SALT_CONE: u64 = 16;
pub const SALT_POINTS: u64 = 32;

/// One independent stream per (seed, salt, index).
pub fn stream(seed: u64, salt: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((salt << 32) | index as u64);
    rng
}

/// A rational in [0, 2] with denominator at most 16.
fn random_coord(rng: &mut ChaCha8Rng) -> Rat {
    let den = rng.gen_range(1..=16i64);
    let num = rng.gen_range(0..=2 * den);
    rat(num, den)
}

pub fn simplex(n: usize) -> AntiBlockingBody {
    let pts: Vec<Point> = (0..n).map(|i| Point::unit(n, i)).collect();
    down_closure(n, &pts).expect("unit simplex is a valid body")
}

pub fn cube(n: usize) -> AntiBlockingBody {
    scaled_cube(n, rat(1, 1))
}

fn scaled_cube(n: usize, side: Rat) -> AntiBlockingBody {
    down_closure(n, &[Point::new(vec![side; n])]).expect("box is a valid body")
}

pub fn random_antiblocking(n: usize, rng: &mut ChaCha8Rng) -> Result<AntiBlockingBody> {
    assert!(n >= 1, "bodies need a positive dimension");
    for _ in 0..RESAMPLE_TRIES {
        let m = rng.gen_range(n..=2 * n);
        let pts: Vec<Point> = (0..m)
            .map(|_| Point::new((0..n).map(|_| random_coord(rng)).collect()))
            .collect();
        match down_closure(n, &pts) {
            Ok(b) => return Ok(b),
            Err(Error::NotFullDimensional { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidBody(
        "resampling did not reach a full-dimensional body".into(),
    ))
}

/// `count` random bodies behind the mandatory simplex and cube.
pub fn antiblocking_corpus(n: usize, count: usize, seed: u64) -> Result<Vec<AntiBlockingBody>> {
    let mut out = vec![simplex(n), cube(n)];
    for i in 0..count {
        out.push(random_antiblocking(n, &mut stream(seed, SALT_BODY, i))?);
    }
    Ok(out)
}

/// Independent pairs behind the mandatory (simplex, simplex) and
/// (cube, cube).
pub fn antiblocking_pairs(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<(AntiBlockingBody, AntiBlockingBody)>> {
    let mut out = vec![(simplex(n), simplex(n)), (cube(n), cube(n))];
    for i in 0..count {
        let k = random_antiblocking(n, &mut stream(seed, SALT_BODY, i))?;
        let t = random_antiblocking(n, &mut stream(seed, SALT_BODY_SECOND, i))?;
        out.push((k, t));
    }
    Ok(out)
}

/// An extra independent body for checks that need three distinct inputs.
pub fn third_body(n: usize, seed: u64, index: usize) -> Result<AntiBlockingBody> {
    random_antiblocking(n, &mut stream(seed, SALT_BODY_THIRD, index))
}

/// A point of the ambient space with coordinates in [-2, 2].
pub fn random_signed_point(n: usize, rng: &mut ChaCha8Rng) -> Point {
    Point::new(
        (0..n)
            .map(|_| {
                let den = rng.gen_range(1..=16i64);
                rat(rng.gen_range(-2 * den..=2 * den), den)
            })
            .collect(),
    )
}

/// Parent pairs with a difference mode, alternating sum and hull. The two
/// mandatory instances are the volume-product equality cases: the half cube
/// against itself under sum, the simplex against itself under hull.
pub fn difference_corpus(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<(AntiBlockingBody, AntiBlockingBody, DiffMode)>> {
    let half = scaled_cube(n, rat(1, 2));
    let mut out = vec![
        (half.clone(), half, DiffMode::Sum),
        (simplex(n), simplex(n), DiffMode::Hull),
    ];
    for i in 0..count {
        let k = random_antiblocking(n, &mut stream(seed, SALT_DIFF, i))?;
        let t = random_antiblocking(n, &mut stream(seed, SALT_DIFF_SECOND, i))?;
        let mode = if i % 2 == 0 { DiffMode::Sum } else { DiffMode::Hull };
        out.push((k, t, mode));
    }
    Ok(out)
}

/// The fixed home cones of the dissection suite: the two small orthants and
/// a skew ordered cone.
pub fn cone_registry() -> Vec<PolyhedralCone> {
    let orthant = |n: usize| {
        let rays: Vec<Point> = (0..n).map(|i| Point::unit(n, i)).collect();
        PolyhedralCone::from_generators(n, &rays).expect("orthant is a valid cone")
    };
    let skew = PolyhedralCone::from_generators(2, &[pt(&[1, 0]), pt(&[1, 1])])
        .expect("skew cone is a valid cone");
    vec![orthant(2), orthant(3), skew]
}

/// The canonical dual pair over a cone: the down-closure of the cone's
/// generators, and of the dual cone's generators on the dual side.
pub fn canonical_cone_pair(cone: &PolyhedralCone) -> Result<(CABBody, CABBody)> {
    let k = c_down_closure(cone, cone.generators())?;
    let dual = cone.dual()?;
    let l = c_down_closure(&dual, dual.generators())?;
    Ok((k, l))
}

/// A random point of the cone: a nonnegative rational combination of its
/// generators, biased to keep coordinates small.
pub fn random_cone_point(cone: &PolyhedralCone, rng: &mut ChaCha8Rng) -> Point {
    let n = cone.dim();
    let mut acc = Point::zero(n);
    for g in cone.generators() {
        let c = rat(rng.gen_range(0..=4), rng.gen_range(1..=4));
        acc = acc.add(&g.scale(&c));
    }
    acc
}

fn random_cab(cone: &PolyhedralCone, rng: &mut ChaCha8Rng) -> Result<CABBody> {
    let n = cone.dim();
    for _ in 0..RESAMPLE_TRIES {
        let m = rng.gen_range(n..=2 * n);
        // one strictly interior point keeps the closure full-dimensional
        let mut pts = vec![cone
            .generators()
            .iter()
            .fold(Point::zero(n), |acc, g| acc.add(g))
            .scale(&rat(rng.gen_range(1..=4), 4))];
        for _ in 0..m {
            pts.push(random_cone_point(cone, rng));
        }
        match c_down_closure(cone, &pts) {
            Ok(b) => return Ok(b),
            Err(Error::NotFullDimensional { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidBody(
        "resampling did not reach a full-dimensional cone body".into(),
    ))
}

/// Dual pairs over one cone, behind the canonical pair. `salt_base` keeps
/// the streams of different cones apart.
pub fn cone_pair_corpus(
    cone: &PolyhedralCone,
    count: usize,
    seed: u64,
    salt_base: u64,
) -> Result<Vec<(CABBody, CABBody)>> {
    let dual = cone.dual()?;
    let mut out = vec![canonical_cone_pair(cone)?];
    for i in 0..count {
        let k = random_cab(cone, &mut stream(seed, SALT_CONE + 2 * salt_base, i))?;
        let l = random_cab(&dual, &mut stream(seed, SALT_CONE + 2 * salt_base + 1, i))?;
        out.push((k, l));
    }
    Ok(out)
}

pub fn random_poset(n: usize, rng: &mut ChaCha8Rng) -> Poset {
    // relations only flow up the index order, so closure always succeeds
    let densities = [0.2, 0.35, 0.5];
    let p = densities[rng.gen_range(0..densities.len())];
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                relations.push((a, b));
            }
        }
    }
    Poset::from_relations(n, &relations).expect("index-increasing relations close acyclically")
}

/// `count` random posets behind the mandatory chain and antichain.
pub fn poset_corpus(n: usize, count: usize, seed: u64) -> Vec<Poset> {
    let mut out = vec![Poset::chain(n), Poset::antichain(n)];
    for i in 0..count {
        out.push(random_poset(n, &mut stream(seed, SALT_POSET, i)));
    }
    out
}

/// Independent poset pairs behind (chain, chain) and (antichain, antichain).
pub fn double_poset_corpus(n: usize, count: usize, seed: u64) -> Vec<DoublePoset> {
    let mut out = vec![
        DoublePoset::new(Poset::chain(n), Poset::chain(n)).expect("equal ground sets"),
        DoublePoset::new(Poset::antichain(n), Poset::antichain(n)).expect("equal ground sets"),
    ];
    for i in 0..count {
        let p = random_poset(n, &mut stream(seed, SALT_POSET, i));
        let q = random_poset(n, &mut stream(seed, SALT_POSET_SECOND, i));
        out.push(DoublePoset::new(p, q).expect("equal ground sets"));
    }
    out
}

pub fn reversal(n: usize) -> Permutation {
    Permutation::new((1..=n).rev().collect()).expect("reversal is a permutation")
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut word: Vec<usize> = (1..=n).collect();
    word.shuffle(rng);
    Permutation::new(word).expect("shuffle keeps the word a permutation")
}

/// Either all of Sₙ, or `count` random words behind the identity and the
/// reversal.
pub fn permutation_corpus(n: usize, count: CountSpec, seed: u64) -> Result<Vec<Permutation>> {
    match count {
        CountSpec::All => {
            if n > 8 {
                return Err(Error::Config(format!(
                    "exhaustive permutation corpora stop at n = 8, got {n}"
                )));
            }
            Ok(Permutation::all(n))
        }
        CountSpec::Fixed(count) => {
            let mut out = vec![Permutation::identity(n), reversal(n)];
            for i in 0..count {
                out.push(random_permutation(n, &mut stream(seed, SALT_PERM, i)));
            }
            Ok(out)
        }
    }
}

/// Either all of Sₙ × Sₙ, or `count` independent pairs behind (id, id) and
/// (reversal, reversal).
pub fn permutation_pairs(
    n: usize,
    count: CountSpec,
    seed: u64,
) -> Result<Vec<(Permutation, Permutation)>> {
    match count {
        CountSpec::All => {
            if n > 5 {
                return Err(Error::Config(format!(
                    "exhaustive permutation pair corpora stop at n = 5, got {n}"
                )));
            }
            let all = Permutation::all(n);
            let mut out = Vec::with_capacity(all.len() * all.len());
            for pi in &all {
                for sigma in &all {
                    out.push((pi.clone(), sigma.clone()));
                }
            }
            Ok(out)
        }
        CountSpec::Fixed(count) => {
            let mut out = vec![
                (Permutation::identity(n), Permutation::identity(n)),
                (reversal(n), reversal(n)),
            ];
            for i in 0..count {
                let pi = random_permutation(n, &mut stream(seed, SALT_PERM, i));
                let sigma = random_permutation(n, &mut stream(seed, SALT_PERM_SECOND, i));
                out.push((pi, sigma));
            }
            Ok(out)
        }
    }
}
