//! Word-vector interchange formats (word2vec text and binary) and vocabulary
//! cropping.
//!
//! Text: header `<count> <dim>`, then `<word> <v1> ... <vd>` per line. Values
//! are written in Rust's shortest round-trip decimal form, so text files are
//! lossless for `f64`.
//!
//! Binary: ASCII header `<count> <dim>\n`, then per word the word bytes, one
//! space, and `dim` little-endian IEEE-754 `f32` values, optionally followed
//! by a newline. Values pass through `f32`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use ndarray::{Array2, ArrayView1};

use crate::corpus::Vocabulary;
use crate::error::{Error, Result};

/// Words with one vector each.
#[derive(Debug, Clone, PartialEq)]
pub struct WordVectors {
    words: Vec<String>,
    index: HashMap<String, usize>,
    matrix: Array2<f64>,
}

impl WordVectors {
    pub fn new(words: Vec<String>, matrix: Array2<f64>) -> Result<Self> {
        if words.len() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: words.len(),
                found: matrix.nrows(),
            });
        }
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.is_empty() || w.contains(char::is_whitespace) {
                return Err(Error::Invalid(format!("invalid word {w:?}")));
            }
            // First occurrence wins for duplicated words.
            index.entry(w.clone()).or_insert(i);
        }
        Ok(WordVectors {
            words,
            index,
            matrix,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.matrix.row(i)
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn vector(&self, word: &str) -> Option<ArrayView1<'_, f64>> {
        self.index_of(word).map(|i| self.matrix.row(i))
    }

    pub fn into_parts(self) -> (Vec<String>, Array2<f64>) {
        (self.words, self.matrix)
    }
}

pub fn to_text(vectors: &WordVectors) -> String {
    let mut out = format!("{} {}\n", vectors.len(), vectors.dim());
    for (w, row) in vectors.words.iter().zip(vectors.matrix.rows()) {
        out.push_str(w);
        for x in row {
            let _ = write!(out, " {x}");
        }
        out.push('\n');
    }
    out
}

fn parse_header(line: &str, what: &'static str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(n)), Some(Ok(d)), None) => Ok((n, d)),
        _ => Err(Error::parse(
            what,
            1,
            format!("bad header {line:?}, expected <count> <dim>"),
        )),
    }
}

pub fn parse_text(text: &str) -> Result<WordVectors> {
    const WHAT: &str = "text embeddings";
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(WHAT, 1, "missing header"))?;
    let (count, dim) = parse_header(header, WHAT)?;
    let mut words = Vec::with_capacity(count);
    let mut data = Vec::with_capacity(count * dim);
    for (i, line) in lines {
        let lineno = i + 1;
        if words.len() == count {
            return Err(Error::parse(
                WHAT,
                lineno,
                format!("more than {count} rows"),
            ));
        }
        let mut fields = line.split_whitespace();
        let word = fields.next().unwrap_or_default();
        let before = data.len();
        for f in fields {
            let x: f64 = f
                .parse()
                .map_err(|_| Error::parse(WHAT, lineno, format!("non-numeric field {f:?}")))?;
            data.push(x);
        }
        if data.len() - before != dim {
            return Err(Error::parse(
                WHAT,
                lineno,
                format!("expected {dim} values, found {}", data.len() - before),
            ));
        }
        words.push(word.to_owned());
    }
    if words.len() != count {
        return Err(Error::parse(
            WHAT,
            text.lines().count(),
            format!("header announces {count} rows, found {}", words.len()),
        ));
    }
    let matrix = Array2::from_shape_vec((count, dim), data).expect("row lengths checked");
    WordVectors::new(words, matrix)
}

pub fn to_binary(vectors: &WordVectors) -> Vec<u8> {
    let mut out = format!("{} {}\n", vectors.len(), vectors.dim()).into_bytes();
    out.reserve(vectors.len() * (vectors.dim() * 4 + 16));
    for (w, row) in vectors.words.iter().zip(vectors.matrix.rows()) {
        out.extend_from_slice(w.as_bytes());
        out.push(b' ');
        for &x in row {
            out.extend_from_slice(&(x as f32).to_le_bytes());
        }
        out.push(b'\n');
    }
    out
}

pub fn parse_binary(bytes: &[u8]) -> Result<WordVectors> {
    const WHAT: &str = "binary embeddings";
    let nl = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::parse(WHAT, 1, "missing header line"))?;
    let header = std::str::from_utf8(&bytes[..nl])
        .map_err(|_| Error::parse(WHAT, 1, "header is not ASCII"))?;
    let (count, dim) = parse_header(header, WHAT)?;
    let mut pos = nl + 1;
    let mut words = Vec::with_capacity(count);
    let mut data = Vec::with_capacity(count * dim);
    for index in 0..count {
        while pos < bytes.len() && bytes[pos] == b'\n' {
            pos += 1;
        }
        let space = bytes[pos..]
            .iter()
            .position(|&b| b == b' ')
            .ok_or(Error::Truncated { index })?;
        let word = String::from_utf8_lossy(&bytes[pos..pos + space]).into_owned();
        pos += space + 1;
        let end = pos + 4 * dim;
        if end > bytes.len() {
            return Err(Error::Truncated { index });
        }
        data.extend(
            bytes[pos..end]
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64),
        );
        pos = end;
        words.push(word);
    }
    let matrix = Array2::from_shape_vec((count, dim), data).expect("row lengths checked");
    WordVectors::new(words, matrix)
}

pub fn read_text(path: &Path) -> Result<WordVectors> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_text(&text)
}

pub fn write_text(path: &Path, vectors: &WordVectors) -> Result<()> {
    std::fs::write(path, to_text(vectors)).map_err(|e| Error::io(path, e))
}

pub fn read_binary(path: &Path) -> Result<WordVectors> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_binary(&bytes)
}

pub fn write_binary(path: &Path, vectors: &WordVectors) -> Result<()> {
    std::fs::write(path, to_binary(vectors)).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Binary,
}

impl Format {
    /// `.bin` means binary, anything else text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("bin") => Format::Binary,
            _ => Format::Text,
        }
    }
}

pub fn read(path: &Path) -> Result<WordVectors> {
    match Format::from_path(path) {
        Format::Text => read_text(path),
        Format::Binary => read_binary(path),
    }
}

pub fn write(path: &Path, vectors: &WordVectors) -> Result<()> {
    match Format::from_path(path) {
        Format::Text => write_text(path, vectors),
        Format::Binary => write_binary(path, vectors),
    }
}

/// Keep only the vectors of vocabulary words, in vocabulary id order.
pub fn crop(vectors: &WordVectors, vocab: &Vocabulary) -> Result<WordVectors> {
    let kept: Vec<usize> = vocab
        .words()
        .iter()
        .filter_map(|w| vectors.index_of(w))
        .collect();
    if kept.is_empty() {
        return Err(Error::Invalid(
            "vocabulary and embeddings share no words".into(),
        ));
    }
    let words = kept.iter().map(|&i| vectors.words[i].clone()).collect();
    let matrix = vectors.matrix.select(ndarray::Axis(0), &kept);
    WordVectors::new(words, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wv(words: &[&str], data: Vec<f64>) -> WordVectors {
        let d = data.len() / words.len().max(1);
        WordVectors::new(
            words.iter().map(|w| w.to_string()).collect(),
            Array2::from_shape_vec((words.len(), d), data).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn text_single_row() {
        let v = parse_text("1 2\nhi 0.5 -1.0").unwrap();
        assert_eq!(v.words(), ["hi"]);
        assert_eq!(v.row(0).to_vec(), vec![0.5, -1.0]);
    }

    #[test]
    fn text_errors() {
        assert!(matches!(
            parse_text("2 3\nhi 1 2 3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_text("1 2\nhi 1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_text("1 2\nhi 1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_text("1 2\nhi 1 2\nyo 1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_text("x 2\n").is_err());
    }

    #[test]
    fn text_tolerates_trailing_space() {
        let v = parse_text("1 2\nhi 0.5 -1.0 \n").unwrap();
        assert_eq!(v.dim(), 2);
    }

    #[test]
    fn binary_layout() {
        let mut bytes = b"1 1\nx ".to_vec();
        bytes.extend_from_slice(&[0x00, 0x00, 0x80, 0x3f]);
        let v = parse_binary(&bytes).unwrap();
        assert_eq!(v.row(0)[0], 1.0);
        assert_eq!(to_binary(&v), [bytes.as_slice(), b"\n"].concat());
    }

    #[test]
    fn binary_empty_and_truncated() {
        let v = parse_binary(b"0 300\n").unwrap();
        assert!(v.is_empty());
        assert_eq!(v.dim(), 300);
        let full = to_binary(&wv(&["a", "b"], vec![1.0, 2.0, 3.0, 4.0]));
        let cut = &full[..full.len() - 3];
        assert!(matches!(
            parse_binary(cut),
            Err(Error::Truncated { index: 1 })
        ));
        assert!(matches!(
            parse_binary(b"1 2\nabc"),
            Err(Error::Truncated { index: 0 })
        ));
    }

    #[test]
    fn binary_without_separating_newlines() {
        let mut bytes = b"2 1\na ".to_vec();
        bytes.extend_from_slice(&2.5f32.to_le_bytes());
        bytes.extend_from_slice(b"b ");
        bytes.extend_from_slice(&(-1.0f32).to_le_bytes());
        let v = parse_binary(&bytes).unwrap();
        assert_eq!(v.words(), ["a", "b"]);
        assert_eq!(
            v.matrix().iter().copied().collect::<Vec<_>>(),
            vec![2.5, -1.0]
        );
    }

    #[test]
    fn crop_keeps_vocab_order_and_bits() {
        let v = wv(&["a", "b", "c"], vec![1.0, 0.1, 2.0, 0.2, 3.0, 0.3]);
        let vocab =
            Vocabulary::from_entries(vec![("c".into(), 5), ("a".into(), 2), ("q".into(), 1)], 1)
                .unwrap();
        let c = crop(&v, &vocab).unwrap();
        assert_eq!(c.words(), ["c", "a"]);
        assert_eq!(c.row(0).to_vec(), vec![3.0, 0.3]);
        assert_eq!(c.row(1).to_vec(), vec![1.0, 0.1]);
        let disjoint = Vocabulary::from_entries(vec![("z".into(), 1)], 1).unwrap();
        assert!(crop(&v, &disjoint).is_err());
    }

    fn arb_vectors() -> impl Strategy<Value = WordVectors> {
        (0usize..6, 1usize..5).prop_flat_map(|(n, d)| {
            prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), n * d)
                .prop_map(move |data| {
                    let words: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
                    WordVectors::new(words, Array2::from_shape_vec((n, d), data).unwrap()).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip_is_lossless(v in arb_vectors()) {
            let back = parse_text(&to_text(&v)).unwrap();
            prop_assert_eq!(back.words(), v.words());
            for (a, b) in back.matrix().iter().zip(v.matrix().iter()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }

        #[test]
        fn binary_round_trip_is_bitwise(v in arb_vectors()) {
            let bytes = to_binary(&v);
            let back = parse_binary(&bytes).unwrap();
            prop_assert_eq!(to_binary(&back), bytes);
            for (a, b) in back.matrix().iter().zip(v.matrix().iter()) {
                prop_assert_eq!(a.to_bits(), ((*b as f32) as f64).to_bits());
            }
        }
    }
}
