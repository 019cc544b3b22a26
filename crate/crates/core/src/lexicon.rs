//! The persistent lexicon: relation vocabularies defining the shared
//! context space, one density operator per word, and provenance metadata.
//!
//! On disk a lexicon is a little-endian binary file: magic `DSEM`, format
//! version, metadata, length-prefixed UTF-8 strings, dense complex
//! matrices as (re, im) f64 pairs in row-major order, and a trailing CRC32
//! over everything before it. Round trips are bit-exact.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CoreError, LexiconError};
use crate::ingest::RelationVocabulary;
use crate::operator::{Complex64, ComplexMatrix, DensityOperator};

const MAGIC: [u8; 4] = *b"DSEM";
const FORMAT_VERSION: u32 = 1;

/// How a lexicon was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// CRC32 of the corpus bytes the lexicon was built from.
    pub corpus_crc: u32,
    /// Words per relation vocabulary.
    pub vocabulary_size: usize,
    /// Relation labels, in tensor-factor order.
    pub relations: Vec<String>,
    /// Whether head contexts were included as neighbors.
    pub include_head_contexts: bool,
}

/// Word → density operator map over a shared tensor-product context space.
#[derive(Debug, Clone)]
pub struct Lexicon {
    vocabularies: Vec<RelationVocabulary>,
    operators: BTreeMap<String, DensityOperator>,
    provenance: Provenance,
}

impl Lexicon {
    pub fn new(vocabularies: Vec<RelationVocabulary>, provenance: Provenance) -> Self {
        Self {
            vocabularies,
            operators: BTreeMap::new(),
            provenance,
        }
    }

    /// Dimension of the shared context space.
    pub fn space_dim(&self) -> usize {
        self.vocabularies.iter().map(RelationVocabulary::dim).product()
    }

    /// Factor dimensions, one per relation.
    pub fn subsystem_dims(&self) -> Vec<usize> {
        self.vocabularies.iter().map(RelationVocabulary::dim).collect()
    }

    pub fn vocabularies(&self) -> &[RelationVocabulary] {
        &self.vocabularies
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.operators.contains_key(word)
    }

    pub fn get(&self, word: &str) -> Option<&DensityOperator> {
        self.operators.get(word)
    }

    /// Words in deterministic (sorted) order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.operators.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &DensityOperator)> {
        self.operators.iter().map(|(w, op)| (w.as_str(), op))
    }

    /// Store a word's operator. It must live in the lexicon's space.
    pub fn insert(&mut self, word: String, operator: DensityOperator) -> Result<(), CoreError> {
        if operator.dim() != self.space_dim() {
            return Err(CoreError::DimensionMismatch {
                left: self.space_dim(),
                right: operator.dim(),
            });
        }
        let operator = if operator.subsystem_dims() == self.subsystem_dims() {
            operator
        } else {
            operator.with_subsystems(&self.subsystem_dims())?
        };
        self.operators.insert(word, operator);
        Ok(())
    }

    /// Serialize to the on-disk format.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&MAGIC);
        write_u32(&mut out, FORMAT_VERSION);
        write_u32(&mut out, self.provenance.corpus_crc);
        write_u32(&mut out, self.provenance.vocabulary_size as u32);
        out.push(self.provenance.include_head_contexts as u8);

        write_u32(&mut out, self.vocabularies.len() as u32);
        for vocabulary in &self.vocabularies {
            write_string(&mut out, vocabulary.relation());
            write_u32(&mut out, vocabulary.words().len() as u32);
            for word in vocabulary.words() {
                write_string(&mut out, word);
            }
        }

        write_u32(&mut out, self.operators.len() as u32);
        for (word, operator) in &self.operators {
            write_string(&mut out, word);
            for entry in operator.matrix().to_row_major() {
                out.extend_from_slice(&entry.re.to_le_bytes());
                out.extend_from_slice(&entry.im.to_le_bytes());
            }
        }

        let crc = crc32fast::hash(&out);
        write_u32(&mut out, crc);
        out
    }

    /// Deserialize. Structural problems (bad magic, unsupported version,
    /// truncation), checksum mismatches, and semantically invalid contents
    /// each surface as their own error.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, LexiconError> {
        let mut reader = Reader { bytes, pos: 0 };

        let magic = reader.array::<4>("magic bytes")?;
        if magic != MAGIC {
            return Err(LexiconError::BadMagic { found: magic });
        }
        let version = reader.u32("format version")?;
        if version != FORMAT_VERSION {
            return Err(LexiconError::UnsupportedVersion {
                found: version,
                supported: FORMAT_VERSION,
            });
        }

        // Raw structural pass; nothing semantic is built until the
        // checksum has vouched for the bytes.
        let corpus_crc = reader.u32("corpus checksum")?;
        let vocabulary_size = reader.u32("vocabulary size")? as usize;
        let include_head_contexts = reader.u8("directionality flag")? != 0;

        let relation_count = reader.u32("relation count")? as usize;
        let mut stored_vocabularies = Vec::with_capacity(relation_count);
        for _ in 0..relation_count {
            let relation = reader.string("relation label")?;
            let word_count = reader.u32("vocabulary length")? as usize;
            let mut words = Vec::with_capacity(word_count);
            for _ in 0..word_count {
                words.push(reader.string("vocabulary word")?);
            }
            stored_vocabularies.push((relation, words));
        }

        let space_dim: usize = stored_vocabularies
            .iter()
            .map(|(_, words)| words.len() + 1)
            .product();

        let word_count = reader.u32("word count")? as usize;
        let mut stored_operators = Vec::with_capacity(word_count);
        for _ in 0..word_count {
            let word = reader.string("word")?;
            let mut entries = Vec::with_capacity(space_dim * space_dim);
            for _ in 0..space_dim * space_dim {
                let re = reader.f64("matrix entry")?;
                let im = reader.f64("matrix entry")?;
                entries.push(Complex64::new(re, im));
            }
            stored_operators.push((word, entries));
        }

        let body_end = reader.pos;
        let stored_crc = reader.u32("trailing checksum")?;
        if reader.pos != bytes.len() {
            return Err(LexiconError::Invalid(format!(
                "{} trailing bytes after checksum",
                bytes.len() - reader.pos
            )));
        }
        let computed = crc32fast::hash(&bytes[..body_end]);
        if stored_crc != computed {
            return Err(LexiconError::ChecksumMismatch {
                stored: stored_crc,
                computed,
            });
        }

        let mut vocabularies = Vec::with_capacity(stored_vocabularies.len());
        let mut relations = Vec::with_capacity(stored_vocabularies.len());
        for (relation, words) in stored_vocabularies {
            if words.len() != vocabulary_size {
                return Err(LexiconError::Invalid(format!(
                    "vocabulary for {relation:?} has {} words, expected {vocabulary_size}",
                    words.len()
                )));
            }
            relations.push(relation.clone());
            vocabularies.push(RelationVocabulary::from_stored(relation, words));
        }
        let subsystem_dims: Vec<usize> =
            vocabularies.iter().map(RelationVocabulary::dim).collect();

        let mut operators = BTreeMap::new();
        for (word, entries) in stored_operators {
            let matrix = ComplexMatrix::from_row_major(space_dim, space_dim, entries)
                .map_err(LexiconError::Core)?;
            let operator = DensityOperator::from_matrix(matrix)
                .and_then(|op| op.with_subsystems(&subsystem_dims))?;
            operators.insert(word, operator);
        }

        Ok(Self {
            vocabularies,
            operators,
            provenance: Provenance {
                corpus_crc,
                vocabulary_size,
                relations,
                include_head_contexts,
            },
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), LexiconError> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        Self::from_bytes(&std::fs::read(path)?)
    }

    /// The serialized lexicon's trailing CRC32; identifies it in query
    /// output.
    pub fn content_crc(&self) -> u32 {
        let bytes = self.to_bytes();
        let tail: [u8; 4] = bytes[bytes.len() - 4..].try_into().expect("crc suffix");
        u32::from_le_bytes(tail)
    }
}

fn write_u32(out: &mut Vec<u8>, value: u32) {
    out.extend_from_slice(&value.to_le_bytes());
}

fn write_string(out: &mut Vec<u8>, value: &str) {
    write_u32(out, value.len() as u32);
    out.extend_from_slice(value.as_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], LexiconError> {
        if self.pos + n > self.bytes.len() {
            return Err(LexiconError::Truncated {
                needed: self.pos + n - self.bytes.len(),
                what,
            });
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn array<const N: usize>(&mut self, what: &'static str) -> Result<[u8; N], LexiconError> {
        Ok(self.take(N, what)?.try_into().expect("exact length"))
    }

    fn u8(&mut self, what: &'static str) -> Result<u8, LexiconError> {
        Ok(self.take(1, what)?[0])
    }

    fn u32(&mut self, what: &'static str) -> Result<u32, LexiconError> {
        Ok(u32::from_le_bytes(self.array::<4>(what)?))
    }

    fn f64(&mut self, what: &'static str) -> Result<f64, LexiconError> {
        Ok(f64::from_le_bytes(self.array::<8>(what)?))
    }

    fn string(&mut self, what: &'static str) -> Result<String, LexiconError> {
        let len = self.u32(what)? as usize;
        let bytes = self.take(len, what)?;
        String::from_utf8(bytes.to_vec())
            .map_err(|_| LexiconError::Invalid(format!("{what} is not valid UTF-8")))
    }
}
