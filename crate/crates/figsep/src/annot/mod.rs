//! Domain types, annotation schema and dataset loading/splitting for
//! compound figures.
//!
//! A [`DatasetManifest`] is one JSON document holding every annotated
//! figure. Manifests are immutable after load; loading validates all
//! domain invariants and reports violations with the offending record id.

mod bbox;
mod schema;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bbox::BBox;
pub use schema::{load_manifest, parse_manifest_bytes, save_manifest, serialize_manifest, LoadOutcome};

/// A case-normalized subfigure letter (`a`..`z`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "char", into = "char")]
pub struct Letter(char);

impl Letter {
    /// Normalizes to lowercase; upper and lower case are one class.
    pub fn new(c: char) -> Result<Self> {
        if c.is_ascii_alphabetic() {
            Ok(Letter(c.to_ascii_lowercase()))
        } else {
            Err(Error::schema(None, format!("invalid letter {c:?}")))
        }
    }

    pub fn as_char(&self) -> char {
        self.0
    }

    /// 0-based position in the full a..z range.
    pub fn ordinal(&self) -> usize {
        (self.0 as u8 - b'a') as usize
    }

    pub fn from_ordinal(i: usize) -> Result<Self> {
        if i < 26 {
            Ok(Letter((b'a' + i as u8) as char))
        } else {
            Err(Error::InvalidArgument(format!("letter ordinal {i} out of range")))
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;
    fn try_from(c: char) -> Result<Self> {
        Letter::new(c)
    }
}

impl From<Letter> for char {
    fn from(l: Letter) -> char {
        l.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered letter set a detector or classifier operates over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet(Vec<Letter>);

impl Alphabet {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Config("alphabet must not be empty".into()));
        }
        let mut seen = HashSet::new();
        for l in &letters {
            if !seen.insert(*l) {
                return Err(Error::Config(format!("duplicate letter '{l}' in alphabet")));
            }
        }
        Ok(Alphabet(letters))
    }

    /// The full default alphabet a..z.
    pub fn full() -> Self {
        Alphabet((b'a'..=b'z').map(|c| Letter(c as char)).collect())
    }

    /// First `n` letters a, b, c, ...
    pub fn first(n: usize) -> Result<Self> {
        if n == 0 || n > 26 {
            return Err(Error::Config(format!("alphabet size {n} out of range")));
        }
        Ok(Alphabet((0..n).map(|i| Letter::from_ordinal(i).unwrap()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    /// Class index of a letter, if present.
    pub fn index_of(&self, l: Letter) -> Option<usize> {
        self.0.iter().position(|&x| x == l)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

/// The fixed master-image category set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Microscopy,
    Parent,
    Diffraction,
    Graph,
    Illustration,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Microscopy,
        Category::Parent,
        Category::Diffraction,
        Category::Graph,
        Category::Illustration,
    ];

    pub fn index(&self) -> usize {
        Category::ALL.iter().position(|c| c == self).unwrap()
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Category::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("category index {i} out of range")))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Category::Microscopy => "microscopy",
            Category::Parent => "parent",
            Category::Diffraction => "diffraction",
            Category::Graph => "graph",
            Category::Illustration => "illustration",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Category {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::schema(None, format!("unknown category '{s}'")))
    }
}

/// A detected or annotated subfigure letter marker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubfigureLabel {
    pub letter: Letter,
    pub bbox: BBox,
    /// 1.0 for ground truth.
    pub confidence: f64,
}

impl SubfigureLabel {
    pub fn new(letter: Letter, bbox: BBox, confidence: f64) -> Result<Self> {
        check_confidence(confidence)?;
        Ok(SubfigureLabel {
            letter,
            bbox,
            confidence,
        })
    }
}

/// A caption-addressable unit of a compound figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MasterImage {
    pub bbox: BBox,
    pub category: Category,
    /// Associated subfigure letter; at most one per master image.
    pub letter: Option<Letter>,
    pub confidence: f64,
}

impl MasterImage {
    pub fn new(bbox: BBox, category: Category, letter: Option<Letter>, confidence: f64) -> Result<Self> {
        check_confidence(confidence)?;
        Ok(MasterImage {
            bbox,
            category,
            letter,
            confidence,
        })
    }
}

fn check_confidence(c: f64) -> Result<()> {
    if (0.0..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::invariant(None, format!("confidence {c} outside [0,1]")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One annotated compound figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureRecord {
    pub image_id: String,
    /// Path of the figure image, relative to the manifest file. Empty when
    /// the record has no backing file (purely in-memory datasets).
    pub image_path: String,
    pub width: u32,
    pub height: u32,
    pub caption: String,
    pub split: Option<Split>,
    pub labels: Vec<SubfigureLabel>,
    pub masters: Vec<MasterImage>,
}

impl FigureRecord {
    /// Checks containment and the label/master letter linkage.
    pub fn validate(&self, alphabet: &Alphabet, categories: &[Category]) -> Result<()> {
        let id = self.image_id.as_str();
        if self.width == 0 || self.height == 0 {
            return Err(Error::invariant(Some(id), "image dimensions must be nonzero"));
        }
        for label in &self.labels {
            if !alphabet.contains(label.letter) {
                return Err(Error::invariant(
                    Some(id),
                    format!("label letter '{}' not in manifest alphabet", label.letter),
                ));
            }
            if !label.bbox.within(self.width, self.height) {
                return Err(Error::invariant(
                    Some(id),
                    format!("label '{}' box out of image bounds", label.letter),
                ));
            }
        }
        for master in &self.masters {
            if !categories.contains(&master.category) {
                return Err(Error::invariant(
                    Some(id),
                    format!("category '{}' not in manifest category set", master.category),
                ));
            }
            if !master.bbox.within(self.width, self.height) {
                return Err(Error::invariant(Some(id), "master box out of image bounds"));
            }
            if let Some(letter) = master.letter {
                if !self.labels.iter().any(|l| l.letter == letter) {
                    return Err(Error::invariant(
                        Some(id),
                        format!("master letter '{letter}' has no matching subfigure label"),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// An immutable, validated collection of figure records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub alphabet: Alphabet,
    pub categories: Vec<Category>,
    pub records: Vec<FigureRecord>,
}

impl DatasetManifest {
    /// Validates every record and manifest-level invariants.
    pub fn new(alphabet: Alphabet, categories: Vec<Category>, records: Vec<FigureRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyManifest);
        }
        let mut ids = HashSet::new();
        for rec in &records {
            if !ids.insert(rec.image_id.as_str()) {
                return Err(Error::invariant(
                    Some(&rec.image_id),
                    "duplicate image_id in manifest",
                ));
            }
            rec.validate(&alphabet, &categories)?;
        }
        Ok(DatasetManifest {
            alphabet,
            categories,
            records,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records_in(&self, split: Split) -> impl Iterator<Item = &FigureRecord> {
        self.records.iter().filter(move |r| r.split == Some(split))
    }
}

/// Per-letter occurrence counts over all labels in the manifest.
///
/// Letters of the alphabet absent from the data map to 0; the counts sum to
/// the total number of label entries.
pub fn letter_histogram(manifest: &DatasetManifest) -> BTreeMap<Letter, usize> {
    let mut hist: BTreeMap<Letter, usize> = manifest
        .alphabet
        .letters()
        .iter()
        .map(|&l| (l, 0))
        .collect();
    for rec in &manifest.records {
        for label in &rec.labels {
            *hist.entry(label.letter).or_insert(0) += 1;
        }
    }
    hist
}

/// Deterministic train/test partition.
///
/// Records carrying a pre-assigned split tag keep it regardless of `ratio`;
/// untagged records are shuffled with the seed and dealt to hit the ratio.
pub fn split(
    manifest: &DatasetManifest,
    ratio: f64,
    seed: u64,
) -> Result<(DatasetManifest, DatasetManifest)> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "split ratio {ratio} outside (0,1)"
        )));
    }
    let mut train: Vec<FigureRecord> = Vec::new();
    let mut test: Vec<FigureRecord> = Vec::new();
    let mut untagged: Vec<FigureRecord> = Vec::new();
    for rec in &manifest.records {
        match rec.split {
            Some(Split::Train) => train.push(rec.clone()),
            Some(Split::Test) => test.push(rec.clone()),
            None => untagged.push(rec.clone()),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    untagged.shuffle(&mut rng);
    let n_train = (ratio * untagged.len() as f64).round() as usize;
    for (i, mut rec) in untagged.into_iter().enumerate() {
        if i < n_train {
            rec.split = Some(Split::Train);
            train.push(rec);
        } else {
            rec.split = Some(Split::Test);
            test.push(rec);
        }
    }
    if train.is_empty() || test.is_empty() {
        return Err(Error::InvalidArgument(
            "split produced an empty train or test partition".into(),
        ));
    }
    let mk = |records: Vec<FigureRecord>| {
        DatasetManifest::new(manifest.alphabet.clone(), manifest.categories.clone(), records)
    };
    Ok((mk(train)?, mk(test)?))
}

#[cfg(test)]
mod tests;
