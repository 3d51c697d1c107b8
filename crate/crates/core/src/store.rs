//! On-disk index format: a versioned directory holding a JSON manifest and
//! binary payloads.
//!
//! ```text
//! <dir>/manifest.json   kind, analyzer fingerprint, parameters, content hash
//! <dir>/index.bin       lexical or impact postings (little-endian)
//! <dir>/vectors.bin     packed dense rows (little-endian)
//! <dir>/vocab.txt       wordpiece vocabulary copy (self-contained indexes)
//! ```
//!
//! `vectors.bin` layout: magic `ZBDV`, u32 format version, u32 dim,
//! u64 count, count×dim f32 rows, then one (u32 length, UTF-8 bytes) id per
//! row. All integers and floats little-endian.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{ReadBytesExt, WriteBytesExt, LE};
use serde::{Deserialize, Serialize};

use crate::analysis::{Analyzer, AnalyzerKind, WordpieceVocab};
use crate::dense::DenseVectorStore;
use crate::fingerprint::Fingerprint;
use crate::lexical::{
    FieldMode, ImpactIndex, ImpactPosting, InvertedIndex, Posting, Quantization,
};
use crate::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const POSTINGS_FILE: &str = "index.bin";
pub const VECTORS_FILE: &str = "vectors.bin";
pub const VOCAB_FILE: &str = "vocab.txt";

pub const FORMAT_VERSION: u32 = 1;

const LEXICAL_MAGIC: &[u8; 4] = b"ZBLX";
const IMPACT_MAGIC: &[u8; 4] = b"ZBIM";
const DENSE_MAGIC: &[u8; 4] = b"ZBDV";

/// What a persisted index directory contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexKind {
    Bm25Flat,
    Bm25Multifield,
    Impact,
    Dense,
}

impl IndexKind {
    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Bm25Flat => "bm25-flat",
            IndexKind::Bm25Multifield => "bm25-multifield",
            IndexKind::Impact => "impact",
            IndexKind::Dense => "dense",
        }
    }
}

impl std::str::FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bm25-flat" => Ok(IndexKind::Bm25Flat),
            "bm25-multifield" => Ok(IndexKind::Bm25Multifield),
            "impact" => Ok(IndexKind::Impact),
            "dense" => Ok(IndexKind::Dense),
            other => Err(Error::InvalidArgument(format!("unknown index mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzerInfo {
    pub mode: AnalyzerKind,
    pub fingerprint: String,
}

/// Index directory manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub kind: IndexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analyzer: Option<AnalyzerInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantization: Option<Quantization>,
    pub doc_count: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub content_fingerprint: String,
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join(MANIFEST_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| Error::IndexFormat { path: path.clone(), msg: e.to_string() })?;
    if manifest.format_version != FORMAT_VERSION {
        return Err(Error::IndexFormat {
            path,
            msg: format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                manifest.format_version
            ),
        });
    }
    Ok(manifest)
}

fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<()> {
    let path = dir.join(MANIFEST_FILE);
    let mut text = serde_json::to_string_pretty(manifest)
        .map_err(|e| Error::IndexFormat { path: path.clone(), msg: e.to_string() })?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

/// `Write` adapter that folds every byte into a content fingerprint.
struct FingerprintWriter<W: Write> {
    inner: W,
    fp: Fingerprint,
}

impl<W: Write> FingerprintWriter<W> {
    fn new(inner: W) -> Self {
        FingerprintWriter { inner, fp: Fingerprint::new() }
    }
}

impl<W: Write> Write for FingerprintWriter<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.fp.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

fn write_str(w: &mut impl Write, s: &str) -> std::io::Result<()> {
    w.write_u32::<LE>(s.len() as u32)?;
    w.write_all(s.as_bytes())
}

fn read_str(r: &mut impl Read) -> std::io::Result<String> {
    let len = r.read_u32::<LE>()? as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::io(path, e)
}

// ---------------------------------------------------------------------------
// Lexical index
// ---------------------------------------------------------------------------

fn serialize_lexical(index: &InvertedIndex, w: &mut impl Write) -> std::io::Result<()> {
    w.write_all(LEXICAL_MAGIC)?;
    w.write_u32::<LE>(FORMAT_VERSION)?;
    w.write_u8(match index.mode {
        FieldMode::Flat => 0,
        FieldMode::Multifield => 1,
    })?;
    write_str(w, &index.analyzer_fingerprint)?;
    w.write_u64::<LE>(index.doc_ids.len() as u64)?;
    for id in &index.doc_ids {
        write_str(w, id)?;
    }
    w.write_u32::<LE>(index.fields.len() as u32)?;
    for (name, field) in &index.fields {
        write_str(w, name)?;
        for &len in &field.doc_lengths {
            w.write_u32::<LE>(len)?;
        }
        w.write_u64::<LE>(field.total_len)?;
        w.write_u64::<LE>(field.postings.len() as u64)?;
        for (term, postings) in &field.postings {
            write_str(w, term)?;
            w.write_u64::<LE>(postings.len() as u64)?;
            for p in postings {
                w.write_u32::<LE>(p.doc)?;
                w.write_u32::<LE>(p.tf)?;
            }
        }
    }
    Ok(())
}

fn deserialize_lexical(r: &mut impl Read, path: &Path) -> Result<InvertedIndex> {
    let bad = |msg: &str| Error::IndexFormat { path: path.to_path_buf(), msg: msg.to_string() };
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|e| io_err(path, e))?;
    if &magic != LEXICAL_MAGIC {
        return Err(bad("not a lexical index"));
    }
    let version = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
    if version != FORMAT_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let mode = match r.read_u8().map_err(|e| io_err(path, e))? {
        0 => FieldMode::Flat,
        1 => FieldMode::Multifield,
        other => return Err(bad(&format!("unknown field mode tag {other}"))),
    };
    let analyzer_fingerprint = read_str(r).map_err(|e| io_err(path, e))?;
    let doc_count = r.read_u64::<LE>().map_err(|e| io_err(path, e))? as usize;
    let mut doc_ids = Vec::with_capacity(doc_count);
    for _ in 0..doc_count {
        doc_ids.push(read_str(r).map_err(|e| io_err(path, e))?);
    }
    let field_count = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
    let mut fields = std::collections::BTreeMap::new();
    for _ in 0..field_count {
        let name = read_str(r).map_err(|e| io_err(path, e))?;
        let mut doc_lengths = Vec::with_capacity(doc_count);
        for _ in 0..doc_count {
            doc_lengths.push(r.read_u32::<LE>().map_err(|e| io_err(path, e))?);
        }
        let total_len = r.read_u64::<LE>().map_err(|e| io_err(path, e))?;
        let term_count = r.read_u64::<LE>().map_err(|e| io_err(path, e))?;
        let mut postings = std::collections::BTreeMap::new();
        for _ in 0..term_count {
            let term = read_str(r).map_err(|e| io_err(path, e))?;
            let n = r.read_u64::<LE>().map_err(|e| io_err(path, e))? as usize;
            let mut list = Vec::with_capacity(n);
            for _ in 0..n {
                let doc = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
                let tf = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
                list.push(Posting { doc, tf });
            }
            postings.insert(term, list);
        }
        fields.insert(
            name,
            crate::lexical::FieldIndex { postings, doc_lengths, total_len },
        );
    }
    Ok(InvertedIndex { mode, fields, doc_ids, analyzer_fingerprint })
}

pub(crate) fn lexical_fingerprint(index: &InvertedIndex) -> String {
    let mut w = FingerprintWriter::new(std::io::sink());
    serialize_lexical(index, &mut w).expect("sink write cannot fail");
    w.fp.finish()
}

pub(crate) fn save_lexical(index: &InvertedIndex, dir: &Path, analyzer: &Analyzer) -> Result<()> {
    if analyzer.fingerprint() != index.analyzer_fingerprint {
        return Err(Error::AnalyzerMismatch {
            expected: index.analyzer_fingerprint.clone(),
            got: analyzer.fingerprint(),
        });
    }
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(POSTINGS_FILE);
    let file = File::create(&path).map_err(|e| io_err(&path, e))?;
    let mut w = FingerprintWriter::new(BufWriter::new(file));
    serialize_lexical(index, &mut w).map_err(|e| io_err(&path, e))?;
    w.flush().map_err(|e| io_err(&path, e))?;
    let content_fingerprint = w.fp.finish();

    write_vocab_copy(dir, analyzer)?;
    write_manifest(
        dir,
        &Manifest {
            format_version: FORMAT_VERSION,
            kind: match index.mode {
                FieldMode::Flat => IndexKind::Bm25Flat,
                FieldMode::Multifield => IndexKind::Bm25Multifield,
            },
            analyzer: Some(AnalyzerInfo {
                mode: analyzer.kind(),
                fingerprint: analyzer.fingerprint(),
            }),
            quantization: None,
            doc_count: index.doc_ids.len() as u64,
            fields: index.fields.keys().cloned().collect(),
            dim: None,
            content_fingerprint,
        },
    )
}

fn write_vocab_copy(dir: &Path, analyzer: &Analyzer) -> Result<()> {
    if let Some(vocab) = analyzer.vocab() {
        let path = dir.join(VOCAB_FILE);
        let mut text = vocab.tokens().join("\n");
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| io_err(&path, e))?;
    }
    Ok(())
}

fn analyzer_from_manifest(dir: &Path, info: &AnalyzerInfo) -> Result<Analyzer> {
    let analyzer = match info.mode {
        AnalyzerKind::English => Analyzer::english(),
        AnalyzerKind::Whitespace => Analyzer::whitespace(),
        AnalyzerKind::Wordpiece => {
            Analyzer::wordpiece(WordpieceVocab::from_file(dir.join(VOCAB_FILE))?)
        }
    };
    if analyzer.fingerprint() != info.fingerprint {
        return Err(Error::IndexFormat {
            path: dir.to_path_buf(),
            msg: format!(
                "analyzer fingerprint mismatch: manifest says {}, reconstructed {}",
                info.fingerprint,
                analyzer.fingerprint()
            ),
        });
    }
    Ok(analyzer)
}

// ---------------------------------------------------------------------------
// Impact index
// ---------------------------------------------------------------------------

fn serialize_impact(index: &ImpactIndex, w: &mut impl Write) -> std::io::Result<()> {
    w.write_all(IMPACT_MAGIC)?;
    w.write_u32::<LE>(FORMAT_VERSION)?;
    match index.quantization {
        Quantization::None => w.write_u8(0)?,
        Quantization::Fixed { scale, cap } => {
            w.write_u8(1)?;
            w.write_f64::<LE>(scale)?;
            w.write_u32::<LE>(cap)?;
        }
    }
    w.write_u64::<LE>(index.doc_ids.len() as u64)?;
    for id in &index.doc_ids {
        write_str(w, id)?;
    }
    w.write_u64::<LE>(index.postings.len() as u64)?;
    for (term, postings) in &index.postings {
        write_str(w, term)?;
        w.write_u64::<LE>(postings.len() as u64)?;
        for p in postings {
            w.write_u32::<LE>(p.doc)?;
            w.write_f64::<LE>(p.weight)?;
        }
    }
    Ok(())
}

fn deserialize_impact(r: &mut impl Read, path: &Path) -> Result<ImpactIndex> {
    let bad = |msg: &str| Error::IndexFormat { path: path.to_path_buf(), msg: msg.to_string() };
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|e| io_err(path, e))?;
    if &magic != IMPACT_MAGIC {
        return Err(bad("not an impact index"));
    }
    let version = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
    if version != FORMAT_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let quantization = match r.read_u8().map_err(|e| io_err(path, e))? {
        0 => Quantization::None,
        1 => {
            let scale = r.read_f64::<LE>().map_err(|e| io_err(path, e))?;
            let cap = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
            Quantization::Fixed { scale, cap }
        }
        other => return Err(bad(&format!("unknown quantization tag {other}"))),
    };
    let doc_count = r.read_u64::<LE>().map_err(|e| io_err(path, e))? as usize;
    let mut doc_ids = Vec::with_capacity(doc_count);
    for _ in 0..doc_count {
        doc_ids.push(read_str(r).map_err(|e| io_err(path, e))?);
    }
    let term_count = r.read_u64::<LE>().map_err(|e| io_err(path, e))?;
    let mut postings = std::collections::BTreeMap::new();
    for _ in 0..term_count {
        let term = read_str(r).map_err(|e| io_err(path, e))?;
        let n = r.read_u64::<LE>().map_err(|e| io_err(path, e))? as usize;
        let mut list = Vec::with_capacity(n);
        for _ in 0..n {
            let doc = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
            let weight = r.read_f64::<LE>().map_err(|e| io_err(path, e))?;
            list.push(ImpactPosting { doc, weight });
        }
        postings.insert(term, list);
    }
    Ok(ImpactIndex { postings, doc_ids, quantization })
}

pub(crate) fn impact_fingerprint(index: &ImpactIndex) -> String {
    let mut w = FingerprintWriter::new(std::io::sink());
    serialize_impact(index, &mut w).expect("sink write cannot fail");
    w.fp.finish()
}

pub(crate) fn save_impact(index: &ImpactIndex, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(POSTINGS_FILE);
    let file = File::create(&path).map_err(|e| io_err(&path, e))?;
    let mut w = FingerprintWriter::new(BufWriter::new(file));
    serialize_impact(index, &mut w).map_err(|e| io_err(&path, e))?;
    w.flush().map_err(|e| io_err(&path, e))?;
    write_manifest(
        dir,
        &Manifest {
            format_version: FORMAT_VERSION,
            kind: IndexKind::Impact,
            analyzer: None,
            quantization: Some(index.quantization),
            doc_count: index.doc_ids.len() as u64,
            fields: Vec::new(),
            dim: None,
            content_fingerprint: w.fp.finish(),
        },
    )
}

// ---------------------------------------------------------------------------
// Dense store
// ---------------------------------------------------------------------------

fn serialize_dense(store: &DenseVectorStore, w: &mut impl Write) -> std::io::Result<()> {
    w.write_all(DENSE_MAGIC)?;
    w.write_u32::<LE>(FORMAT_VERSION)?;
    w.write_u32::<LE>(store.dim as u32)?;
    w.write_u64::<LE>(store.doc_ids.len() as u64)?;
    for &v in &store.data {
        w.write_f32::<LE>(v)?;
    }
    for id in &store.doc_ids {
        write_str(w, id)?;
    }
    Ok(())
}

fn deserialize_dense(r: &mut impl Read, path: &Path) -> Result<DenseVectorStore> {
    let bad = |msg: &str| Error::IndexFormat { path: path.to_path_buf(), msg: msg.to_string() };
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|e| io_err(path, e))?;
    if &magic != DENSE_MAGIC {
        return Err(bad("not a dense vector store"));
    }
    let version = r.read_u32::<LE>().map_err(|e| io_err(path, e))?;
    if version != FORMAT_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let dim = r.read_u32::<LE>().map_err(|e| io_err(path, e))? as usize;
    let count = r.read_u64::<LE>().map_err(|e| io_err(path, e))? as usize;
    let mut data = vec![0f32; count * dim];
    for v in &mut data {
        *v = r.read_f32::<LE>().map_err(|e| io_err(path, e))?;
    }
    let mut doc_ids = Vec::with_capacity(count);
    for _ in 0..count {
        doc_ids.push(read_str(r).map_err(|e| io_err(path, e))?);
    }
    DenseVectorStore::from_parts(dim, doc_ids, data)
}

pub(crate) fn dense_fingerprint(store: &DenseVectorStore) -> String {
    let mut w = FingerprintWriter::new(std::io::sink());
    serialize_dense(store, &mut w).expect("sink write cannot fail");
    w.fp.finish()
}

pub(crate) fn save_dense(store: &DenseVectorStore, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(VECTORS_FILE);
    let file = File::create(&path).map_err(|e| io_err(&path, e))?;
    let mut w = FingerprintWriter::new(BufWriter::new(file));
    serialize_dense(store, &mut w).map_err(|e| io_err(&path, e))?;
    w.flush().map_err(|e| io_err(&path, e))?;
    write_manifest(
        dir,
        &Manifest {
            format_version: FORMAT_VERSION,
            kind: IndexKind::Dense,
            analyzer: None,
            quantization: None,
            doc_count: store.doc_ids.len() as u64,
            fields: Vec::new(),
            dim: Some(store.dim),
            content_fingerprint: w.fp.finish(),
        },
    )
}

// ---------------------------------------------------------------------------
// Directory loading
// ---------------------------------------------------------------------------

/// A persisted index of any kind, reconstructed from its directory.
pub enum LoadedIndex {
    Lexical { index: InvertedIndex, analyzer: Analyzer },
    Impact(ImpactIndex),
    Dense(DenseVectorStore),
}

impl LoadedIndex {
    pub fn kind(&self) -> IndexKind {
        match self {
            LoadedIndex::Lexical { index, .. } => match index.mode() {
                FieldMode::Flat => IndexKind::Bm25Flat,
                FieldMode::Multifield => IndexKind::Bm25Multifield,
            },
            LoadedIndex::Impact(_) => IndexKind::Impact,
            LoadedIndex::Dense(_) => IndexKind::Dense,
        }
    }
}

/// Opens an index directory, dispatching on the manifest kind and verifying
/// the payload content hash.
pub fn load_index_dir(dir: impl AsRef<Path>) -> Result<LoadedIndex> {
    let dir = dir.as_ref();
    let manifest = read_manifest(dir)?;
    let payload = match manifest.kind {
        IndexKind::Dense => dir.join(VECTORS_FILE),
        _ => dir.join(POSTINGS_FILE),
    };
    let file = File::open(&payload).map_err(|e| io_err(&payload, e))?;
    let mut reader = BufReader::new(file);
    let loaded = match manifest.kind {
        IndexKind::Bm25Flat | IndexKind::Bm25Multifield => {
            let index = deserialize_lexical(&mut reader, &payload)?;
            let info = manifest.analyzer.as_ref().ok_or_else(|| Error::IndexFormat {
                path: dir.to_path_buf(),
                msg: "lexical manifest lacks analyzer info".into(),
            })?;
            let analyzer = analyzer_from_manifest(dir, info)?;
            if analyzer.fingerprint() != index.analyzer_fingerprint() {
                return Err(Error::IndexFormat {
                    path: dir.to_path_buf(),
                    msg: "index analyzer fingerprint disagrees with manifest".into(),
                });
            }
            LoadedIndex::Lexical { index, analyzer }
        }
        IndexKind::Impact => LoadedIndex::Impact(deserialize_impact(&mut reader, &payload)?),
        IndexKind::Dense => LoadedIndex::Dense(deserialize_dense(&mut reader, &payload)?),
    };
    let actual = match &loaded {
        LoadedIndex::Lexical { index, .. } => lexical_fingerprint(index),
        LoadedIndex::Impact(index) => impact_fingerprint(index),
        LoadedIndex::Dense(store) => dense_fingerprint(store),
    };
    if actual != manifest.content_fingerprint {
        return Err(Error::IndexFormat {
            path: payload,
            msg: format!(
                "content fingerprint mismatch: manifest {}, payload {}",
                manifest.content_fingerprint, actual
            ),
        });
    }
    Ok(loaded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Document;
    use crate::lexical::{build_lexical_index, Bm25Params};
    use std::collections::BTreeMap;

    fn corpus() -> Vec<Result<Document>> {
        vec![
            Ok(Document { id: "d1".into(), title: "Feline".into(), text: "cat sat".into() }),
            Ok(Document { id: "d2".into(), title: "".into(), text: "cat cat dog".into() }),
        ]
    }

    #[test]
    fn lexical_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let analyzer = Analyzer::english();
        let index = build_lexical_index(corpus(), &analyzer, FieldMode::Multifield).unwrap();
        index.save(dir.path(), &analyzer).unwrap();

        let LoadedIndex::Lexical { index: back, analyzer: back_analyzer } =
            load_index_dir(dir.path()).unwrap()
        else {
            panic!("expected lexical index");
        };
        assert_eq!(back.fingerprint(), index.fingerprint());
        let hits = back
            .search(
                "cat",
                &back_analyzer,
                10,
                &FieldMode::Multifield.default_field_weights(),
                &Bm25Params::default(),
            )
            .unwrap();
        let orig = index
            .search(
                "cat",
                &analyzer,
                10,
                &FieldMode::Multifield.default_field_weights(),
                &Bm25Params::default(),
            )
            .unwrap();
        assert_eq!(hits, orig);
    }

    #[test]
    fn impact_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let vectors: Vec<Result<(String, BTreeMap<String, f64>)>> = vec![
            Ok(("d1".into(), BTreeMap::from([("a".to_string(), 0.337)]))),
            Ok(("d2".into(), BTreeMap::from([("b".to_string(), 2.0)]))),
        ];
        let index = crate::lexical::build_impact_index(vectors, Quantization::default()).unwrap();
        index.save(dir.path()).unwrap();
        let LoadedIndex::Impact(back) = load_index_dir(dir.path()).unwrap() else {
            panic!("expected impact index");
        };
        assert_eq!(back.fingerprint(), index.fingerprint());
        assert_eq!(back.quantization(), Quantization::default());
    }

    #[test]
    fn dense_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let store = crate::dense::build_dense_index(vec![
            Ok(("a".to_string(), vec![1.0f32, 0.0])),
            Ok(("b".to_string(), vec![0.0f32, 1.0])),
        ])
        .unwrap();
        store.save(dir.path()).unwrap();
        let LoadedIndex::Dense(back) = load_index_dir(dir.path()).unwrap() else {
            panic!("expected dense store");
        };
        assert_eq!(back.dim(), 2);
        assert_eq!(back.count(), 2);
        assert_eq!(back.fingerprint(), store.fingerprint());
    }

    #[test]
    fn corrupted_payload_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let analyzer = Analyzer::whitespace();
        let index = build_lexical_index(corpus(), &analyzer, FieldMode::Flat).unwrap();
        index.save(dir.path(), &analyzer).unwrap();
        // Flip one payload byte past the header.
        let payload = dir.path().join(POSTINGS_FILE);
        let mut bytes = std::fs::read(&payload).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 0xff;
        std::fs::write(&payload, bytes).unwrap();
        assert!(matches!(load_index_dir(dir.path()), Err(Error::IndexFormat { .. })));
    }
}
