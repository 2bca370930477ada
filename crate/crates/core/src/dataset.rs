//! MNIST ingestion and preprocessing.
//!
//! Raw 28×28 images are normalized to `[0, 1]`, resized to 8×8 with
//! half-pixel-center bilinear interpolation, and cut into four 4×4 quadrants.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{stream_rng, Stream};

pub const IMAGE_SIDE: usize = 28;
pub const IMAGE_PIXELS: usize = IMAGE_SIDE * IMAGE_SIDE;
pub const SMALL_SIDE: usize = 8;
pub const CHUNK_SIDE: usize = 4;
pub const NUM_CLASSES: usize = 10;

pub const IDX3_MAGIC: u32 = 0x0000_0803;
pub const IDX1_MAGIC: u32 = 0x0000_0801;

pub const TRAIN_IMAGES: &str = "train-images-idx3-ubyte";
pub const TRAIN_LABELS: &str = "train-labels-idx1-ubyte";
pub const TEST_IMAGES: &str = "t10k-images-idx3-ubyte";
pub const TEST_LABELS: &str = "t10k-labels-idx1-ubyte";

/// A 4×4 image chunk in raster order.
pub type Chunk = [f64; 16];
/// An 8×8 image in raster order.
pub type Image8 = [f64; 64];

/// A 28×28 grayscale image with values in 0..=255.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawImage {
    pixels: Box<[u8; IMAGE_PIXELS]>,
}

impl RawImage {
    pub fn from_pixels(pixels: &[u8]) -> Result<Self> {
        let pixels: Box<[u8; IMAGE_PIXELS]> = pixels
            .to_vec()
            .into_boxed_slice()
            .try_into()
            .map_err(|p: Box<[u8]>| Error::Argument(format!("expected {IMAGE_PIXELS} pixels, got {}", p.len())))?;
        Ok(Self { pixels })
    }

    pub fn pixels(&self) -> &[u8; IMAGE_PIXELS] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * IMAGE_SIDE + col]
    }
}

/// One preprocessed example: four quadrant chunks (TL, TR, BL, BR) and its class.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleRecord {
    pub chunks: [Chunk; 4],
    /// Class in 1..=10, equal to `digit + 1`.
    pub label: u8,
    pub digit: u8,
}

impl ExampleRecord {
    pub fn new(chunks: [Chunk; 4], digit: u8) -> Result<Self> {
        if digit > 9 {
            return Err(Error::Argument(format!("digit {digit} is not in 0..=9")));
        }
        if chunks.iter().flatten().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Argument("chunk value outside [0, 1]".into()));
        }
        Ok(Self {
            chunks,
            label: digit_to_class(digit),
            digit,
        })
    }

    /// Reassembles the 8×8 image (raster order).
    pub fn image8(&self) -> Image8 {
        assemble_quadrants(&self.chunks)
    }
}

pub fn digit_to_class(digit: u8) -> u8 {
    digit + 1
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn u32_be(&mut self, what: &str) -> Result<u32> {
        let end = self.pos + 4;
        let raw = self.bytes.get(self.pos..end).ok_or_else(|| Error::Format {
            offset: self.pos,
            message: format!("truncated header while reading {what}"),
        })?;
        self.pos = end;
        Ok(u32::from_be_bytes(raw.try_into().unwrap()))
    }

    fn magic(&mut self, expected: u32) -> Result<()> {
        let magic = self.u32_be("magic")?;
        if magic != expected {
            return Err(Error::Format {
                offset: 0,
                message: format!("bad magic 0x{magic:08x}, expected 0x{expected:08x}"),
            });
        }
        Ok(())
    }

    fn payload(&mut self, len: usize) -> Result<&'a [u8]> {
        let available = self.bytes.len() - self.pos;
        if available < len {
            return Err(Error::Format {
                offset: self.bytes.len(),
                message: format!("truncated payload: expected {len} bytes, found {available}"),
            });
        }
        let out = &self.bytes[self.pos..self.pos + len];
        self.pos += len;
        Ok(out)
    }
}

/// Parses an IDX3 image file (magic 0x00000803) of 28×28 images.
pub fn parse_idx_images(bytes: &[u8]) -> Result<Vec<RawImage>> {
    let mut r = Reader { bytes, pos: 0 };
    r.magic(IDX3_MAGIC)?;
    let count = r.u32_be("image count")? as usize;
    let rows_offset = r.pos;
    let rows = r.u32_be("row count")? as usize;
    let cols = r.u32_be("column count")? as usize;
    if rows != IMAGE_SIDE || cols != IMAGE_SIDE {
        return Err(Error::Format {
            offset: rows_offset,
            message: format!("image dimensions {rows}x{cols}, expected {IMAGE_SIDE}x{IMAGE_SIDE}"),
        });
    }
    let payload = r.payload(count * IMAGE_PIXELS)?;
    payload.chunks_exact(IMAGE_PIXELS).map(RawImage::from_pixels).collect()
}

/// Parses an IDX1 label file (magic 0x00000801); every label must be a digit.
pub fn parse_idx_labels(bytes: &[u8]) -> Result<Vec<u8>> {
    let mut r = Reader { bytes, pos: 0 };
    r.magic(IDX1_MAGIC)?;
    let count = r.u32_be("label count")? as usize;
    let start = r.pos;
    let payload = r.payload(count)?;
    if let Some(i) = payload.iter().position(|&d| d > 9) {
        return Err(Error::Format {
            offset: start + i,
            message: format!("label byte {} is not a digit", payload[i]),
        });
    }
    Ok(payload.to_vec())
}

/// Serializes images as IDX3. Used for fixtures and round trips.
pub fn encode_idx_images(images: &[RawImage]) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + images.len() * IMAGE_PIXELS);
    for word in [IDX3_MAGIC, images.len() as u32, IMAGE_SIDE as u32, IMAGE_SIDE as u32] {
        out.extend_from_slice(&word.to_be_bytes());
    }
    for img in images {
        out.extend_from_slice(img.pixels());
    }
    out
}

pub fn encode_idx_labels(digits: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + digits.len());
    out.extend_from_slice(&IDX1_MAGIC.to_be_bytes());
    out.extend_from_slice(&(digits.len() as u32).to_be_bytes());
    out.extend_from_slice(digits);
    out
}

/// Source coordinate of an output sample under half-pixel-center mapping,
/// split into the two taps and the weight of the upper tap.
fn bilinear_taps(out_index: usize, in_len: usize, out_len: usize) -> (usize, usize, f64) {
    let scale = in_len as f64 / out_len as f64;
    let src = ((out_index as f64 + 0.5) * scale - 0.5).clamp(0.0, (in_len - 1) as f64);
    let lo = src.floor() as usize;
    let hi = (lo + 1).min(in_len - 1);
    (lo, hi, src - lo as f64)
}

/// Normalizes to `[0, 1]` then bilinearly resizes 28×28 → 8×8 (half-pixel
/// centers, edge clamped, no antialiasing).
pub fn resize_8x8(img: &RawImage) -> Image8 {
    let mut norm = [0.0f64; IMAGE_PIXELS];
    for (n, &p) in norm.iter_mut().zip(img.pixels().iter()) {
        *n = p as f64 / 255.0;
    }
    let taps: Vec<_> = (0..SMALL_SIDE)
        .map(|i| bilinear_taps(i, IMAGE_SIDE, SMALL_SIDE))
        .collect();
    let mut out = [0.0; 64];
    for (r, &(y0, y1, fy)) in taps.iter().enumerate() {
        for (c, &(x0, x1, fx)) in taps.iter().enumerate() {
            let at = |y: usize, x: usize| norm[y * IMAGE_SIDE + x];
            let top = at(y0, x0) + (at(y0, x1) - at(y0, x0)) * fx;
            let bottom = at(y1, x0) + (at(y1, x1) - at(y1, x0)) * fx;
            out[r * SMALL_SIDE + c] = top + (bottom - top) * fy;
        }
    }
    out
}

/// Cuts an 8×8 image into (top-left, top-right, bottom-left, bottom-right).
pub fn split_quadrants(img8: &Image8) -> [Chunk; 4] {
    let mut chunks = [[0.0; 16]; 4];
    for (q, chunk) in chunks.iter_mut().enumerate() {
        let (row0, col0) = ((q / 2) * CHUNK_SIDE, (q % 2) * CHUNK_SIDE);
        for r in 0..CHUNK_SIDE {
            for c in 0..CHUNK_SIDE {
                chunk[r * CHUNK_SIDE + c] = img8[(row0 + r) * SMALL_SIDE + col0 + c];
            }
        }
    }
    chunks
}

pub fn assemble_quadrants(chunks: &[Chunk; 4]) -> Image8 {
    let mut img = [0.0; 64];
    for (q, chunk) in chunks.iter().enumerate() {
        let (row0, col0) = ((q / 2) * CHUNK_SIDE, (q % 2) * CHUNK_SIDE);
        for r in 0..CHUNK_SIDE {
            for c in 0..CHUNK_SIDE {
                img[(row0 + r) * SMALL_SIDE + col0 + c] = chunk[r * CHUNK_SIDE + c];
            }
        }
    }
    img
}

/// Runs the full per-image pipeline. Output order follows input order.
pub fn preprocess(images: &[RawImage], digits: &[u8]) -> Result<Vec<ExampleRecord>> {
    if images.len() != digits.len() {
        return Err(Error::Argument(format!(
            "{} images but {} labels",
            images.len(),
            digits.len()
        )));
    }
    images
        .par_iter()
        .zip(digits.par_iter())
        .map(|(img, &d)| ExampleRecord::new(split_quadrants(&resize_8x8(img)), d))
        .collect()
}

/// The official tune (60000) and test (10000) sets after preprocessing.
#[derive(Clone, Debug)]
pub struct MnistData {
    pub tune: Vec<ExampleRecord>,
    pub test: Vec<ExampleRecord>,
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

/// Loads and preprocesses the four uncompressed MNIST files from `dir`.
pub fn load_mnist(dir: &Path) -> Result<MnistData> {
    let load = |images: &str, labels: &str| -> Result<Vec<ExampleRecord>> {
        let imgs = parse_idx_images(&read_file(&dir.join(images))?)?;
        let digits = parse_idx_labels(&read_file(&dir.join(labels))?)?;
        preprocess(&imgs, &digits)
    };
    Ok(MnistData {
        tune: load(TRAIN_IMAGES, TRAIN_LABELS)?,
        test: load(TEST_IMAGES, TEST_LABELS)?,
    })
}

/// Subset sizes of the train/validation/test partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SplitSpec {
    pub n_train: usize,
    pub n_val: usize,
    pub n_test: usize,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            n_train: 50_000,
            n_val: 10_000,
            n_test: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Splits {
    pub train: Vec<ExampleRecord>,
    pub validation: Vec<ExampleRecord>,
    pub test: Vec<ExampleRecord>,
}

/// Seeded permutation of `0..n`.
pub fn split_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut stream_rng(seed, Stream::Split));
    idx
}

/// Shuffles the tune set with `seed` and cuts it into train/validation.
/// The test set passes through unchanged.
pub fn make_splits(tune: &[ExampleRecord], test: &[ExampleRecord], spec: SplitSpec, seed: u64) -> Result<Splits> {
    if tune.len() != spec.n_train + spec.n_val {
        return Err(Error::Split(format!(
            "expected {} tune records, got {}",
            spec.n_train + spec.n_val,
            tune.len()
        )));
    }
    if test.len() != spec.n_test {
        return Err(Error::Split(format!(
            "expected {} test records, got {}",
            spec.n_test,
            test.len()
        )));
    }
    let perm = split_permutation(tune.len(), seed);
    let (train_idx, val_idx) = perm.split_at(spec.n_train);
    Ok(Splits {
        train: train_idx.iter().map(|&i| tune[i].clone()).collect(),
        validation: val_idx.iter().map(|&i| tune[i].clone()).collect(),
        test: test.to_vec(),
    })
}

/// Class-stratified subsample containing `round(fraction · len)` records.
///
/// Per-class quotas use largest-remainder rounding so the total is exact;
/// members are drawn by a seeded shuffle within each class and returned in
/// their original relative order.
pub fn stratified_subset(records: &[ExampleRecord], fraction: f64, rng: &mut ChaCha8Rng) -> Result<Vec<ExampleRecord>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Argument(format!("subset fraction {fraction} not in (0, 1]")));
    }
    if fraction == 1.0 {
        return Ok(records.to_vec());
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); NUM_CLASSES];
    for (i, r) in records.iter().enumerate() {
        by_class[r.digit as usize].push(i);
    }
    let target = (fraction * records.len() as f64).round() as usize;
    let exact: Vec<f64> = by_class.iter().map(|m| fraction * m.len() as f64).collect();
    let mut quota: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut order: Vec<usize> = (0..NUM_CLASSES).collect();
    // largest remainder first, class index breaks ties
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let mut missing = target.saturating_sub(quota.iter().sum());
    for &c in order.iter().cycle().take(NUM_CLASSES * 2) {
        if missing == 0 {
            break;
        }
        if quota[c] < by_class[c].len() {
            quota[c] += 1;
            missing -= 1;
        }
    }
    let mut chosen = Vec::with_capacity(target);
    for (members, &q) in by_class.iter_mut().zip(&quota) {
        members.shuffle(rng);
        chosen.extend_from_slice(&members[..q]);
    }
    chosen.sort_unstable();
    Ok(chosen.into_iter().map(|i| records[i].clone()).collect())
}

const CACHE_MAGIC: &[u8; 8] = b"HQNNSPL1";
/// Bumped whenever preprocessing output changes.
pub const PIPELINE_VERSION: u32 = 1;

/// Writes train/validation/test splits to a versioned little-endian binary file
/// tagged with the seed that produced them.
pub fn write_split_cache(path: &Path, splits: &Splits, seed: u64) -> Result<()> {
    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&PIPELINE_VERSION.to_le_bytes());
    out.extend_from_slice(&seed.to_le_bytes());
    for part in [&splits.train, &splits.validation, &splits.test] {
        out.extend_from_slice(&(part.len() as u64).to_le_bytes());
        for rec in part.iter() {
            out.push(rec.digit);
            for v in rec.chunks.iter().flatten() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Reads a split cache. Returns `Ok(None)` when the file was written by a
/// different pipeline version or seed.
pub fn read_split_cache(path: &Path, seed: u64) -> Result<Option<Splits>> {
    let bytes = read_file(path)?;
    let bad = |msg: &str| Error::Cache(format!("{}: {msg}", path.display()));
    if bytes.len() < 20 || &bytes[..8] != CACHE_MAGIC {
        return Err(bad("not a split cache"));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    let stored_seed = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    if version != PIPELINE_VERSION || stored_seed != seed {
        return Ok(None);
    }
    let mut pos = 20;
    let mut take = |n: usize| -> Result<&[u8]> {
        let s = bytes.get(pos..pos + n).ok_or_else(|| bad("truncated"))?;
        pos += n;
        Ok(s)
    };
    let mut parts = Vec::with_capacity(3);
    for _ in 0..3 {
        let len = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
        let mut part = Vec::with_capacity(len);
        for _ in 0..len {
            let digit = take(1)?[0];
            let mut chunks = [[0.0; 16]; 4];
            for v in chunks.iter_mut().flatten() {
                *v = f64::from_le_bytes(take(8)?.try_into().unwrap());
            }
            part.push(ExampleRecord::new(chunks, digit).map_err(|e| bad(&e.to_string()))?);
        }
        parts.push(part);
    }
    let test = parts.pop().unwrap();
    let validation = parts.pop().unwrap();
    let train = parts.pop().unwrap();
    Ok(Some(Splits {
        train,
        validation,
        test,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand::{Rng, SeedableRng};

    fn image_from_fn(f: impl Fn(usize, usize) -> u8) -> RawImage {
        let px: Vec<u8> = (0..IMAGE_PIXELS).map(|k| f(k / IMAGE_SIDE, k % IMAGE_SIDE)).collect();
        RawImage::from_pixels(&px).unwrap()
    }

    /// Tent-kernel evaluation of bilinear resampling, written without the
    /// two-tap decomposition used by `resize_8x8`.
    fn tent_resize(img: &RawImage) -> Image8 {
        let mut out = [0.0; 64];
        let center = |i: usize| (i as f64 + 0.5) * 3.5 - 0.5;
        for r in 0..8 {
            for c in 0..8 {
                let (sy, sx) = (center(r), center(c));
                let mut acc = 0.0;
                for y in 0..IMAGE_SIDE {
                    let wy = (1.0 - (y as f64 - sy).abs()).max(0.0);
                    for x in 0..IMAGE_SIDE {
                        let wx = (1.0 - (x as f64 - sx).abs()).max(0.0);
                        acc += wy * wx * img.get(y, x) as f64 / 255.0;
                    }
                }
                out[r * 8 + c] = acc;
            }
        }
        out
    }

    fn fake_records(n: usize, seed: u64) -> Vec<ExampleRecord> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|i| {
                let mut chunks = [[0.0; 16]; 4];
                chunks[0][0] = rng.random::<f64>();
                chunks[1][1] = i as f64 / n as f64;
                ExampleRecord::new(chunks, (i % 10) as u8).unwrap()
            })
            .collect()
    }

    #[test]
    fn idx_images_round_trip() {
        let a = image_from_fn(|r, c| (r * 9 + c) as u8);
        let b = image_from_fn(|r, c| 255 - (r + c) as u8);
        let blob = encode_idx_images(&[a.clone(), b.clone()]);
        assert_eq!(blob.len(), 16 + 2 * 784);
        assert_eq!(parse_idx_images(&blob).unwrap(), vec![a, b]);
    }

    #[test]
    fn idx_image_errors() {
        let img = image_from_fn(|_, _| 0);
        let mut blob = encode_idx_images(&[img]);
        let mut bad_magic = blob.clone();
        bad_magic[3] = 0x01;
        assert!(matches!(
            parse_idx_images(&bad_magic),
            Err(Error::Format { offset: 0, .. })
        ));

        blob.truncate(blob.len() - 1);
        match parse_idx_images(&blob) {
            Err(Error::Format { offset, .. }) => assert_eq!(offset, 16 + 783),
            other => panic!("expected format error, got {other:?}"),
        }
        assert!(matches!(
            parse_idx_images(&blob[..6]),
            Err(Error::Format { offset: 4, .. })
        ));

        let mut wrong_dims = encode_idx_images(&[]);
        wrong_dims[8..12].copy_from_slice(&27u32.to_be_bytes());
        assert!(matches!(
            parse_idx_images(&wrong_dims),
            Err(Error::Format { offset: 8, .. })
        ));
    }

    #[test]
    fn idx_labels() {
        let blob = encode_idx_labels(&[3, 0, 9]);
        let digits = parse_idx_labels(&blob).unwrap();
        assert_eq!(digits, vec![3, 0, 9]);
        assert_eq!(digit_to_class(digits[0]), 4);

        let bad = encode_idx_labels(&[1, 10]);
        assert!(matches!(parse_idx_labels(&bad), Err(Error::Format { offset: 9, .. })));
        let mut wrong = encode_idx_labels(&[1]);
        wrong[3] = 0x03;
        assert!(parse_idx_labels(&wrong).is_err());
        assert!(parse_idx_labels(&encode_idx_labels(&[1, 2])[..9]).is_err());
    }

    #[test]
    fn resize_constant_image() {
        for v in [0u8, 17, 128, 255] {
            let out = resize_8x8(&image_from_fn(|_, _| v));
            for x in out {
                assert!((x - v as f64 / 255.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn resize_single_bright_pixel() {
        // Output sample centers sit at 1.25 + 3.5·i; pixel (12, 12) lies between
        // samples 3 (11.75) and 4 (15.25) but only sample 3 is within one pixel.
        let img = image_from_fn(|r, c| if r == 12 && c == 12 { 255 } else { 0 });
        let out = resize_8x8(&img);
        let oracle = tent_resize(&img);
        for k in 0..64 {
            assert!((out[k] - oracle[k]).abs() < 1e-12);
        }
        let w = 1.0 - (12.0f64 - 11.75);
        assert!((out[3 * 8 + 3] - w * w).abs() < 1e-15);
        assert_eq!(out.iter().filter(|&&v| v != 0.0).count(), 1);
    }

    #[test]
    fn resize_matches_tent_oracle_on_random_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let px: Vec<u8> = (0..IMAGE_PIXELS).map(|_| rng.random()).collect();
            let img = RawImage::from_pixels(&px).unwrap();
            let out = resize_8x8(&img);
            let oracle = tent_resize(&img);
            for k in 0..64 {
                assert!((out[k] - oracle[k]).abs() < 1e-12);
                assert!((0.0..=1.0).contains(&out[k]));
            }
        }
    }

    #[test]
    fn quadrants_in_fixed_order() {
        let mut img = [0.0; 64];
        for r in 0..8 {
            for c in 0..8 {
                let q = (r / 4) * 2 + c / 4;
                img[r * 8 + c] = (q + 1) as f64 / 255.0;
            }
        }
        let chunks = split_quadrants(&img);
        for (q, chunk) in chunks.iter().enumerate() {
            assert!(chunk.iter().all(|&v| v == (q + 1) as f64 / 255.0));
        }
        assert_eq!(chunks.iter().map(|c| c.len()).sum::<usize>(), 64);

        let ramp: Image8 = std::array::from_fn(|k| k as f64 / 63.0);
        assert_eq!(assemble_quadrants(&split_quadrants(&ramp)), ramp);
    }

    #[test]
    fn record_validation() {
        assert!(ExampleRecord::new([[0.0; 16]; 4], 10).is_err());
        let mut bad = [[0.0; 16]; 4];
        bad[2][5] = 1.5;
        assert!(ExampleRecord::new(bad, 1).is_err());
        assert_eq!(ExampleRecord::new([[0.5; 16]; 4], 9).unwrap().label, 10);
    }

    #[test]
    fn split_sizes_and_determinism() {
        let spec = SplitSpec {
            n_train: 50,
            n_val: 10,
            n_test: 7,
        };
        let tune = fake_records(60, 1);
        let test = fake_records(7, 2);
        let a = make_splits(&tune, &test, spec, 42).unwrap();
        assert_eq!((a.train.len(), a.validation.len(), a.test.len()), (50, 10, 7));
        assert_eq!(a.test, test);
        let b = make_splits(&tune, &test, spec, 42).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.validation, b.validation);
        assert_ne!(split_permutation(60, 42), split_permutation(60, 43));

        // disjoint and exhaustive: each record carries a unique marker in chunk 1
        let mut markers: Vec<f64> = a.train.iter().chain(&a.validation).map(|r| r.chunks[1][1]).collect();
        markers.sort_by(f64::total_cmp);
        markers.dedup();
        assert_eq!(markers.len(), 60);

        assert!(matches!(make_splits(&tune[..59], &test, spec, 1), Err(Error::Split(_))));
        assert!(matches!(make_splits(&tune, &test[..6], spec, 1), Err(Error::Split(_))));
    }

    #[test]
    fn stratified_subset_counts() {
        let records = fake_records(1003, 4);
        let mut rng = stream_rng(7, Stream::Subset);
        let sub = stratified_subset(&records, 0.05, &mut rng).unwrap();
        assert_eq!(sub.len(), 50);
        let mut counts = [0usize; 10];
        for r in &sub {
            counts[r.digit as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c == 5));
        assert!(stratified_subset(&records, 0.0, &mut rng).is_err());
        assert!(stratified_subset(&records, 1.5, &mut rng).is_err());
        assert_eq!(stratified_subset(&records, 1.0, &mut rng).unwrap().len(), 1003);
    }

    #[test]
    fn split_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("splits.bin");
        let splits = Splits {
            train: fake_records(12, 1),
            validation: fake_records(3, 2),
            test: fake_records(4, 3),
        };
        write_split_cache(&path, &splits, 9).unwrap();
        let back = read_split_cache(&path, 9).unwrap().unwrap();
        assert_eq!(back.train, splits.train);
        assert_eq!(back.validation, splits.validation);
        assert_eq!(back.test, splits.test);
        assert!(read_split_cache(&path, 10).unwrap().is_none());

        fs::write(&path, b"garbage").unwrap();
        assert!(matches!(read_split_cache(&path, 9), Err(Error::Cache(_))));
    }
}
