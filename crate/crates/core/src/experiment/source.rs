use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::codebook::{parse_codebook, Codebook};
use crate::constructions::{multiset_construct, subset_construct, ClassicalCode};
use crate::error::{Error, Result};

/// Which tagging rule turns an inner code into a permutation-channel code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    /// Positional sequence numbers; yields a subset code.
    Subset,
    /// Run sequence numbers; yields a multiset code.
    Multiset,
}

/// Where an inner classical code comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InnerSource {
    Hamming74,
    Repetition { q: usize, length: usize },
    File(PathBuf),
}

impl InnerSource {
    pub fn load(&self) -> Result<ClassicalCode> {
        match self {
            InnerSource::Hamming74 => Ok(ClassicalCode::hamming_7_4()),
            InnerSource::Repetition { q, length } => ClassicalCode::repetition(*q, *length),
            InnerSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                ClassicalCode::parse(&text)
            }
        }
    }
}

/// A codebook file or a named construction.
///
/// Text forms: `file:<path>`, or `<kind>:<inner>` where kind is `subset` or
/// `multiset` and inner is `hamming74`, `repetition:<q>:<length>` or
/// `inner:<path>` (an inner-code file).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSource {
    File(PathBuf),
    Construction {
        kind: ConstructionKind,
        inner: InnerSource,
    },
}

/// A resolved code, with its inner code when it came from a construction.
#[derive(Debug, Clone)]
pub struct LoadedCode {
    pub codebook: Codebook,
    pub declared_min_distance: Option<u64>,
    pub inner: Option<(ConstructionKind, ClassicalCode)>,
}

impl CodeSource {
    pub fn load(&self) -> Result<LoadedCode> {
        match self {
            CodeSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                let parsed = parse_codebook(&text)?;
                Ok(LoadedCode {
                    codebook: parsed.codebook,
                    declared_min_distance: parsed.declared_min_distance,
                    inner: None,
                })
            }
            CodeSource::Construction { kind, inner } => {
                let inner = inner.load()?;
                let codebook = match kind {
                    ConstructionKind::Subset => subset_construct(&inner)?,
                    ConstructionKind::Multiset => multiset_construct(&inner)?,
                };
                Ok(LoadedCode {
                    codebook,
                    declared_min_distance: None,
                    inner: Some((*kind, inner)),
                })
            }
        }
    }
}

impl FromStr for CodeSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::syntax(format!("unrecognized code source {s:?}"));
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        let kind = match head {
            "file" => return Ok(CodeSource::File(PathBuf::from(rest))),
            "subset" => ConstructionKind::Subset,
            "multiset" => ConstructionKind::Multiset,
            _ => return Err(bad()),
        };
        let inner = match rest.split(':').collect::<Vec<_>>().as_slice() {
            ["hamming74"] => InnerSource::Hamming74,
            ["repetition", q, length] => InnerSource::Repetition {
                q: q.parse().map_err(|_| bad())?,
                length: length.parse().map_err(|_| bad())?,
            },
            _ => match rest.strip_prefix("inner:") {
                Some(path) => InnerSource::File(PathBuf::from(path)),
                None => return Err(bad()),
            },
        };
        Ok(CodeSource::Construction { kind, inner })
    }
}

impl fmt::Display for CodeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSource::File(p) => write!(f, "file:{}", p.display()),
            CodeSource::Construction { kind, inner } => {
                let kind = match kind {
                    ConstructionKind::Subset => "subset",
                    ConstructionKind::Multiset => "multiset",
                };
                match inner {
                    InnerSource::Hamming74 => write!(f, "{kind}:hamming74"),
                    InnerSource::Repetition { q, length } => write!(f, "{kind}:repetition:{q}:{length}"),
                    InnerSource::File(p) => write!(f, "{kind}:inner:{}", p.display()),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for text in [
            "subset:hamming74",
            "multiset:repetition:3:4",
            "subset:inner:codes/x.txt",
            "file:books/a.txt",
        ] {
            let source: CodeSource = text.parse().unwrap();
            assert_eq!(source.to_string(), text);
        }
        assert!("hamming74".parse::<CodeSource>().is_err());
        assert!("subset:golay".parse::<CodeSource>().is_err());
        assert!("subset:repetition:x:3".parse::<CodeSource>().is_err());
    }

    #[test]
    fn load_named_constructions() {
        let loaded = "subset:hamming74".parse::<CodeSource>().unwrap().load().unwrap();
        assert_eq!(loaded.codebook.len(), 16);
        assert!(matches!(loaded.inner, Some((ConstructionKind::Subset, _))));
        let rep = "multiset:repetition:2:4".parse::<CodeSource>().unwrap().load().unwrap();
        assert_eq!(rep.codebook.min_distance(), 8);
        let missing = "file:/nonexistent/book.txt".parse::<CodeSource>().unwrap().load();
        assert!(matches!(missing, Err(Error::Io { .. })));
    }
}
