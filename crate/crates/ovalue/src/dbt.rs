//! The directed-binary-tree reference distribution for scoring classifiers.
//!
//! A scoring classifier induces one operating point per threshold, and the
//! points must be jointly monotone: raising the threshold can only lower
//! `alpha` and raise `beta`. A reference distribution over whole curves
//! therefore cannot draw points independently. The directed binary tree
//! samples `J = 2^(depth+1) - 1` operating points that satisfy the
//! monotonicity by construction: the root draws `(alpha, beta)` uniformly
//! from the unit square, and each node splits its rectangle so the left
//! subtree draws from `(alpha below, beta above)` and the right subtree from
//! `(alpha above, beta below)`.
//!
//! Pools of samples are reusable across queries and can be persisted to a
//! byte-exact cache file keyed by generator, seed, depth, and size.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::metrics::{CurveKind, PerformanceCurve};
use crate::rng::{UnitRng, RNG_ID};

/// One draw of `J` jointly monotone operating points, stored in tree (BFS)
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct DbtSample {
    depth: u32,
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl DbtSample {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Number of operating points, `2^(depth+1) - 1`.
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty() // never true: the root always exists
    }

    /// False positive rates in tree order.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// False negative rates in tree order.
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// The `(alpha, beta)` pairs sorted by `alpha`; `beta` is strictly
    /// decreasing across the result, so the pairs trace a valid curve.
    pub fn sorted_pairs(&self) -> Vec<(f64, f64)> {
        let mut pairs: Vec<(f64, f64)> = self
            .alphas
            .iter()
            .copied()
            .zip(self.betas.iter().copied())
            .collect();
        pairs.sort_by(|a, b| a.partial_cmp(b).expect("rates are finite"));
        pairs
    }

    /// Checks the tree-order constraints: every node inside its rectangle,
    /// left child left-and-above, right child right-and-below.
    pub fn validate_structure(&self) -> std::result::Result<(), String> {
        let j = self.len();
        let expected = (1usize << (self.depth + 1)) - 1;
        if j != expected {
            return Err(format!("expected {expected} nodes, found {j}"));
        }
        let mut boxes = vec![(0.0, 1.0, 0.0, 1.0); j];
        for i in 0..j {
            let (a_lo, a_hi, b_lo, b_hi) = boxes[i];
            let (a, b) = (self.alphas[i], self.betas[i]);
            if !(a_lo <= a && a < a_hi && b_lo <= b && b < b_hi) {
                return Err(format!(
                    "node {i}: ({a}, {b}) outside its rectangle \
                     [{a_lo}, {a_hi}) x [{b_lo}, {b_hi})"
                ));
            }
            let left = 2 * i + 1;
            if left + 1 < j {
                boxes[left] = (a_lo, a, b, b_hi);
                boxes[left + 1] = (a, a_hi, b_lo, b);
            }
        }
        Ok(())
    }
}

/// Draws one sample of depth `depth` from the pinned stream; each node draws
/// `alpha` before `beta`, in BFS order.
pub fn sample_dbt(depth: u32, rng: &mut UnitRng) -> DbtSample {
    assert!(depth <= 20, "depth above 20 would allocate 2M+ nodes");
    let j = (1usize << (depth + 1)) - 1;
    let mut alphas = vec![0.0; j];
    let mut betas = vec![0.0; j];
    let mut boxes = vec![(0.0f64, 1.0f64, 0.0f64, 1.0f64); j];
    for i in 0..j {
        let (a_lo, a_hi, b_lo, b_hi) = boxes[i];
        let a = a_lo + (a_hi - a_lo) * rng.next_unit();
        let b = b_lo + (b_hi - b_lo) * rng.next_unit();
        alphas[i] = a;
        betas[i] = b;
        let left = 2 * i + 1;
        if left + 1 < j {
            // Left subtree: easier thresholds unreached, so alpha shrinks
            // and beta grows. Right subtree: the opposite.
            boxes[left] = (a_lo, a, b, b_hi);
            boxes[left + 1] = (a, a_hi, b_lo, b);
        }
    }
    DbtSample {
        depth,
        alphas,
        betas,
    }
}

/// Embeds a sample as a performance curve under prevalence `pi`: pairs
/// sorted by `alpha`, anchored at `(0, 1)` and `(1, 0)`.
pub fn sample_to_curve(sample: &DbtSample, pi: f64, kind: CurveKind) -> PerformanceCurve {
    let pairs = sample.sorted_pairs();
    let mut points = Vec::with_capacity(pairs.len() + 2);
    points.push((0.0, 1.0));
    points.extend(pairs);
    points.push((1.0, 0.0));
    PerformanceCurve::new_unchecked(pi, kind, points)
}

/// A seeded, reusable collection of reference samples.
#[derive(Debug, Clone, PartialEq)]
pub struct DbtPool {
    depth: u32,
    seed: u64,
    samples: Vec<DbtSample>,
}

impl DbtPool {
    /// Draws `count` samples of the given depth from one stream seeded with
    /// `seed`; sample `k` consumes the draws immediately after sample
    /// `k - 1`.
    pub fn build(depth: u32, count: usize, seed: u64) -> DbtPool {
        assert!(count >= 1, "a pool needs at least one sample");
        let mut rng = UnitRng::seed_from_u64(seed);
        let samples = (0..count).map(|_| sample_dbt(depth, &mut rng)).collect();
        DbtPool {
            depth,
            seed,
            samples,
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[DbtSample] {
        &self.samples
    }

    /// SHA-256 of the serialized pool, identifying its exact contents.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Serializes the pool; `from_bytes` inverts this bit-for-bit.
    fn to_bytes(&self) -> Vec<u8> {
        let j = (1usize << (self.depth + 1)) - 1;
        let mut out = Vec::with_capacity(HEADER_LEN + self.len() * j * 16);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(RNG_ID.len() as u32).to_le_bytes());
        out.extend_from_slice(RNG_ID.as_bytes());
        out.extend_from_slice(&self.seed.to_le_bytes());
        out.extend_from_slice(&self.depth.to_le_bytes());
        out.extend_from_slice(&(self.len() as u64).to_le_bytes());
        for sample in &self.samples {
            for &a in &sample.alphas {
                out.extend_from_slice(&a.to_bits().to_le_bytes());
            }
            for &b in &sample.betas {
                out.extend_from_slice(&b.to_bits().to_le_bytes());
            }
        }
        out
    }

    fn from_bytes(bytes: &[u8], path: &Path) -> Result<DbtPool> {
        let err = |message: String| Error::PoolCache {
            path: path.display().to_string(),
            message,
        };
        let mut cursor = ByteCursor { bytes, pos: 0 };
        let mut take = |len: usize| {
            cursor
                .take(len)
                .ok_or_else(|| err("truncated file".into()))
        };

        if take(MAGIC.len())? != MAGIC {
            return Err(err("not a reference pool file".into()));
        }
        let id_len = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
        if id_len > 64 {
            return Err(err("implausible generator id length".into()));
        }
        let id = take(id_len)?;
        if id != RNG_ID.as_bytes() {
            return Err(err(format!(
                "generator mismatch: file has {:?}, this build uses {RNG_ID:?}",
                String::from_utf8_lossy(id)
            )));
        }
        let seed = u64::from_le_bytes(take(8)?.try_into().unwrap());
        let depth = u32::from_le_bytes(take(4)?.try_into().unwrap());
        if depth > 20 {
            return Err(err("implausible depth".into()));
        }
        let count = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
        let j = (1usize << (depth + 1)) - 1;
        let payload_len = count
            .checked_mul(j * 16)
            .ok_or_else(|| err("implausible sample count".into()))?;
        let data = take(payload_len)?;
        if take(1).is_ok() {
            return Err(err("trailing bytes after payload".into()));
        }

        let mut values = data
            .chunks_exact(8)
            .map(|c| f64::from_bits(u64::from_le_bytes(c.try_into().unwrap())));
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            let alphas: Vec<f64> = values.by_ref().take(j).collect();
            let betas: Vec<f64> = values.by_ref().take(j).collect();
            samples.push(DbtSample {
                depth,
                alphas,
                betas,
            });
        }
        Ok(DbtPool {
            depth,
            seed,
            samples,
        })
    }

    /// Writes the pool to `path` atomically (temp file in the same
    /// directory, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let tmp_path = path.with_extension("tmp");
        {
            let mut file = fs::File::create(&tmp_path)?;
            file.write_all(&self.to_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp_path, path)?;
        Ok(())
    }

    /// Reads a pool written by [`DbtPool::save`]; the result is bit-for-bit
    /// identical to the pool that was saved.
    pub fn load(path: &Path) -> Result<DbtPool> {
        let mut bytes = Vec::new();
        fs::File::open(path)?.read_to_end(&mut bytes)?;
        DbtPool::from_bytes(&bytes, path)
    }

    /// Loads the pool at `path` when it matches the requested configuration
    /// exactly; otherwise builds it fresh and writes it back.
    pub fn load_or_build(path: &Path, depth: u32, count: usize, seed: u64) -> Result<DbtPool> {
        if path.exists() {
            let pool = DbtPool::load(path)?;
            if pool.depth == depth && pool.seed == seed && pool.len() == count {
                return Ok(pool);
            }
        }
        let pool = DbtPool::build(depth, count, seed);
        pool.save(path)?;
        Ok(pool)
    }
}

const MAGIC: &[u8; 8] = b"OVDBTPL1";
const HEADER_LEN: usize = MAGIC.len() + 4 + RNG_ID.len() + 8 + 4 + 8;

/// Bounds-checked sequential reader over a byte slice.
struct ByteCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteCursor<'a> {
    fn take(&mut self, len: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(len)?;
        if end > self.bytes.len() {
            return None;
        }
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::PerformanceCurve;

    #[test]
    fn sample_has_tree_size() {
        let mut rng = UnitRng::seed_from_u64(0);
        for depth in [0, 1, 4, 6] {
            let s = sample_dbt(depth, &mut rng);
            assert_eq!(s.len(), (1 << (depth + 1)) - 1);
            assert_eq!(s.alphas().len(), s.betas().len());
        }
    }

    #[test]
    fn children_split_the_parent_rectangle() {
        // With nodes indexed from 1: node 5 (right child of 2, which is the
        // left child of the root) must satisfy a2 < a5 < a1 and b1 < b5 < b2.
        let mut rng = UnitRng::seed_from_u64(3);
        for _ in 0..200 {
            let s = sample_dbt(2, &mut rng);
            let (a, b) = (s.alphas(), s.betas());
            assert!(a[1] < a[0], "left child alpha below root");
            assert!(b[1] > b[0], "left child beta above root");
            assert!(a[2] > a[0], "right child alpha above root");
            assert!(b[2] < b[0], "right child beta below root");
            // Node 5 is index 4: right child of index 1.
            assert!(a[4] > a[1] && a[4] < a[0]);
            assert!(b[4] < b[1] && b[4] > b[0]);
            // Node 4 is index 3: left child of index 1.
            assert!(a[3] < a[1]);
            assert!(b[3] > b[1]);
        }
    }

    #[test]
    fn structure_validation_accepts_samples_and_rejects_corruption() {
        let mut rng = UnitRng::seed_from_u64(17);
        let s = sample_dbt(5, &mut rng);
        assert!(s.validate_structure().is_ok());

        let mut broken = s.clone();
        // Swap the root's children: both land outside their rectangles.
        broken.alphas.swap(1, 2);
        assert!(broken.validate_structure().is_err());
    }

    #[test]
    fn sorted_pairs_have_strictly_opposite_order() {
        let mut rng = UnitRng::seed_from_u64(23);
        for _ in 0..100 {
            let s = sample_dbt(4, &mut rng);
            let pairs = s.sorted_pairs();
            for w in pairs.windows(2) {
                assert!(w[0].0 < w[1].0, "alphas strictly increase");
                assert!(w[0].1 > w[1].1, "betas strictly decrease");
            }
        }
    }

    #[test]
    fn sample_converts_to_a_valid_curve() {
        let mut rng = UnitRng::seed_from_u64(29);
        let s = sample_dbt(3, &mut rng);
        let curve = sample_to_curve(&s, 0.2, CurveKind::Roc);
        // Re-validate through the checked constructor.
        assert!(PerformanceCurve::new(
            curve.pi(),
            curve.kind(),
            curve.error_points().to_vec()
        )
        .is_ok());
        assert_eq!(curve.error_points().len(), s.len() + 2);
        let auc = curve.auc().unwrap();
        assert!((0.0..=1.0).contains(&auc));
    }

    #[test]
    fn pool_is_deterministic() {
        let a = DbtPool::build(4, 50, 7);
        let b = DbtPool::build(4, 50, 7);
        assert_eq!(a, b);
        assert_eq!(a.content_hash(), b.content_hash());
        let c = DbtPool::build(4, 50, 8);
        assert_ne!(a.content_hash(), c.content_hash());
    }

    #[test]
    fn root_marginal_is_uniform() {
        // Kolmogorov-Smirnov statistic of the root alphas against Unif[0,1];
        // critical value at the 1e-6 level is about 1.95/sqrt(n).
        let pool = DbtPool::build(3, 4000, 13);
        let mut roots: Vec<f64> = pool.samples().iter().map(|s| s.alphas()[0]).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = roots.len() as f64;
        let ks = roots
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let lo = i as f64 / n;
                let hi = (i + 1) as f64 / n;
                (x - lo).abs().max((x - hi).abs())
            })
            .fold(0.0f64, f64::max);
        assert!(ks < 1.95 / n.sqrt(), "KS statistic {ks} too large");
    }

    #[test]
    fn cache_roundtrip_is_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pool.bin");
        let pool = DbtPool::build(5, 20, 99);
        pool.save(&path).unwrap();
        let loaded = DbtPool::load(&path).unwrap();
        assert_eq!(loaded, pool);
        assert_eq!(loaded.content_hash(), pool.content_hash());
    }

    #[test]
    fn load_or_build_reuses_only_matching_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pool.bin");
        let first = DbtPool::load_or_build(&path, 3, 10, 1).unwrap();
        // Matching request: loaded, not rebuilt (same contents).
        let second = DbtPool::load_or_build(&path, 3, 10, 1).unwrap();
        assert_eq!(first, second);
        // Different seed: rebuilt and the file replaced.
        let third = DbtPool::load_or_build(&path, 3, 10, 2).unwrap();
        assert_ne!(first.content_hash(), third.content_hash());
        let reloaded = DbtPool::load(&path).unwrap();
        assert_eq!(reloaded.seed(), 2);
    }

    #[test]
    fn load_rejects_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pool.bin");
        let pool = DbtPool::build(2, 5, 1);
        pool.save(&path).unwrap();

        let mut bytes = fs::read(&path).unwrap();
        bytes[0] ^= 0xff;
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(
            DbtPool::load(&path).unwrap_err(),
            Error::PoolCache { .. }
        ));

        let good = pool.to_bytes();
        fs::write(&path, &good[..good.len() - 3]).unwrap();
        assert!(DbtPool::load(&path).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn every_sample_validates(seed in 0u64..10_000, depth in 0u32..7) {
            let mut rng = UnitRng::seed_from_u64(seed);
            let s = sample_dbt(depth, &mut rng);
            prop_assert!(s.validate_structure().is_ok());
            let pairs = s.sorted_pairs();
            prop_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1));
        }
    }
}
