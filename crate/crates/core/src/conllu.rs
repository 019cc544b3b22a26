//! CoNLL-U corpus reader: 10-column tab-separated tokens, blank-line
//! sentence boundaries, and `# newdoc` comments (or file boundaries)
//! separating documents. Multiword-token ranges and empty nodes are
//! skipped; only the basic dependency tree is kept.

use std::io::BufRead;

use crate::error::CorpusError;

const FIELD_COUNT: usize = 10;

/// One token of a dependency-parsed sentence. `head` is 1-based within the
/// sentence, 0 for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyToken {
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub head: usize,
    pub deprel: String,
}

#[derive(Debug, Clone, Default)]
pub struct Sentence {
    pub tokens: Vec<DependencyToken>,
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub id: Option<String>,
    pub sentences: Vec<Sentence>,
}

/// Parse a whole CoNLL-U stream into documents.
pub fn parse_corpus(reader: impl BufRead) -> Result<Vec<Document>, CorpusError> {
    let mut parser = Parser::default();
    for (index, line) in reader.lines().enumerate() {
        parser.line(index + 1, &line?)?;
    }
    parser.finish()
}

pub fn parse_corpus_str(text: &str) -> Result<Vec<Document>, CorpusError> {
    parse_corpus(text.as_bytes())
}

#[derive(Default)]
struct Parser {
    documents: Vec<Document>,
    current_doc: Document,
    current_tokens: Vec<(usize, DependencyToken)>,
}

impl Parser {
    fn line(&mut self, number: usize, line: &str) -> Result<(), CorpusError> {
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() {
            return self.flush_sentence();
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim();
            if comment == "newdoc" || comment.starts_with("newdoc ") || comment.starts_with("newdoc\t")
            {
                self.flush_sentence()?;
                self.flush_document();
                self.current_doc.id = comment
                    .strip_prefix("newdoc")
                    .and_then(|rest| rest.trim().strip_prefix("id"))
                    .and_then(|rest| rest.trim().strip_prefix('='))
                    .map(|id| id.trim().to_string())
                    .filter(|id| !id.is_empty());
            }
            return Ok(());
        }

        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != FIELD_COUNT {
            return Err(CorpusError::Malformed {
                line: number,
                message: format!(
                    "expected {FIELD_COUNT} tab-separated fields, found {}",
                    fields.len()
                ),
            });
        }

        let id = fields[0];
        // Multiword-token ranges ("1-2") and empty nodes ("1.1") carry no
        // tree edges.
        if id.contains('-') || id.contains('.') {
            return Ok(());
        }
        let id: usize = id.parse().map_err(|_| CorpusError::Malformed {
            line: number,
            message: format!("token id {id:?} is not an integer"),
        })?;
        if id != self.current_tokens.len() + 1 {
            return Err(CorpusError::Malformed {
                line: number,
                message: format!(
                    "token id {id} out of sequence (expected {})",
                    self.current_tokens.len() + 1
                ),
            });
        }
        let head: usize = fields[6].parse().map_err(|_| CorpusError::Malformed {
            line: number,
            message: format!("head index {:?} is not an integer", fields[6]),
        })?;

        self.current_tokens.push((
            number,
            DependencyToken {
                form: fields[1].to_string(),
                lemma: fields[2].to_string(),
                upos: fields[3].to_string(),
                head,
                deprel: fields[7].to_string(),
            },
        ));
        Ok(())
    }

    fn flush_sentence(&mut self) -> Result<(), CorpusError> {
        if self.current_tokens.is_empty() {
            return Ok(());
        }
        let len = self.current_tokens.len();
        for (line, token) in &self.current_tokens {
            if token.head > len {
                return Err(CorpusError::DanglingHead {
                    line: *line,
                    head: token.head,
                    len,
                });
            }
        }
        let tokens = std::mem::take(&mut self.current_tokens)
            .into_iter()
            .map(|(_, token)| token)
            .collect();
        self.current_doc.sentences.push(Sentence { tokens });
        Ok(())
    }

    fn flush_document(&mut self) {
        if !self.current_doc.sentences.is_empty() {
            self.documents.push(std::mem::take(&mut self.current_doc));
        } else {
            self.current_doc = Document::default();
        }
    }

    fn finish(mut self) -> Result<Vec<Document>, CorpusError> {
        self.flush_sentence()?;
        self.flush_document();
        Ok(self.documents)
    }
}
