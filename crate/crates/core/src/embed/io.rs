//! Model persistence and vector CSV export.
//!
//! Binary layout (all integers and floats little-endian):
//!
//! ```text
//! magic      8 bytes  "IDEAPV\0\x01"
//! version    u32
//! mode       u8       0 = PV-DBOW, 1 = PV-DM
//! dim        u32
//! window     u32
//! negative   u32
//! epochs     u32
//! alpha      f64
//! min_alpha  f64
//! min_count  u64
//! seed       u64
//! vocab_len  u64, then per token: u32 byte length, UTF-8 bytes, u64 count
//! n_docs     u64
//! word vectors    vocab_len × dim f32
//! output vectors  vocab_len × dim f32
//! doc vectors     n_docs × dim f32
//! ```

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{EmbedError, EmbeddingModel, Hyperparameters, Mode, Vocabulary};
use crate::scalar::Real;

pub const MODEL_MAGIC: [u8; 8] = *b"IDEAPV\0\x01";
pub const MODEL_VERSION: u32 = 1;

/// Sidecar describing which idea each document row belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocManifest {
    pub dim: usize,
    pub rows: Vec<String>,
}

pub fn save_model<T: Real, W: Write>(model: &EmbeddingModel<T>, mut w: W) -> Result<(), EmbedError> {
    let h = &model.hyper;
    w.write_all(&MODEL_MAGIC)?;
    w.write_all(&MODEL_VERSION.to_le_bytes())?;
    w.write_all(&[match h.mode {
        Mode::PvDbow => 0u8,
        Mode::PvDm => 1u8,
    }])?;
    for v in [h.dim, h.window, h.negative, h.epochs] {
        w.write_all(&(v as u32).to_le_bytes())?;
    }
    w.write_all(&h.alpha.to_le_bytes())?;
    w.write_all(&h.min_alpha.to_le_bytes())?;
    w.write_all(&h.min_count.to_le_bytes())?;
    w.write_all(&model.seed.to_le_bytes())?;

    let vocab = model.vocab();
    w.write_all(&(vocab.len() as u64).to_le_bytes())?;
    for (tok, &count) in vocab.tokens().iter().zip(vocab.counts()) {
        w.write_all(&(tok.len() as u32).to_le_bytes())?;
        w.write_all(tok.as_bytes())?;
        w.write_all(&count.to_le_bytes())?;
    }
    w.write_all(&(model.n_docs() as u64).to_le_bytes())?;
    let (words, outputs, docs) = model.raw_matrices();
    for matrix in [words, outputs, docs] {
        for &x in matrix {
            w.write_all(&(x.to_f32().unwrap_or(f32::NAN)).to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

struct Reader<R> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], EmbedError> {
        let mut buf = [0u8; N];
        self.inner
            .read_exact(&mut buf)
            .map_err(|e| EmbedError::Format(format!("truncated model file: {e}")))?;
        Ok(buf)
    }
    fn u32(&mut self) -> Result<u32, EmbedError> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }
    fn u64(&mut self) -> Result<u64, EmbedError> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }
    fn f64(&mut self) -> Result<f64, EmbedError> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }
    fn matrix<T: Real>(&mut self, len: usize) -> Result<Vec<T>, EmbedError> {
        (0..len)
            .map(|_| {
                let x = f32::from_le_bytes(self.bytes()?);
                if x.is_finite() {
                    Ok(T::lit(x as f64))
                } else {
                    Err(EmbedError::Format("non-finite matrix entry".into()))
                }
            })
            .collect()
    }
}

pub fn load_model<T: Real, R: Read>(r: R) -> Result<EmbeddingModel<T>, EmbedError> {
    let mut r = Reader { inner: r };
    if r.bytes::<8>()? != MODEL_MAGIC {
        return Err(EmbedError::Format("bad magic".into()));
    }
    let version = r.u32()?;
    if version != MODEL_VERSION {
        return Err(EmbedError::Format(format!("unsupported version {version}")));
    }
    let mode = match r.bytes::<1>()?[0] {
        0 => Mode::PvDbow,
        1 => Mode::PvDm,
        m => return Err(EmbedError::Format(format!("unknown mode {m}"))),
    };
    let dim = r.u32()? as usize;
    let window = r.u32()? as usize;
    let negative = r.u32()? as usize;
    let epochs = r.u32()? as usize;
    let alpha = r.f64()?;
    let min_alpha = r.f64()?;
    let min_count = r.u64()?;
    let seed = r.u64()?;
    if dim == 0 {
        return Err(EmbedError::Format("dim is zero".into()));
    }
    let vocab_len = r.u64()? as usize;
    let mut tokens = Vec::with_capacity(vocab_len.min(1 << 20));
    let mut counts = Vec::with_capacity(vocab_len.min(1 << 20));
    for _ in 0..vocab_len {
        let len = r.u32()? as usize;
        let mut buf = vec![0u8; len];
        r.inner
            .read_exact(&mut buf)
            .map_err(|e| EmbedError::Format(format!("truncated vocabulary: {e}")))?;
        tokens.push(String::from_utf8(buf).map_err(|_| EmbedError::Format("token is not UTF-8".into()))?);
        counts.push(r.u64()?);
    }
    let vocab = Vocabulary::from_parts(tokens, counts, min_count)?;
    let n_docs = r.u64()? as usize;
    let words = r.matrix(vocab_len * dim)?;
    let outputs = r.matrix(vocab_len * dim)?;
    let docs = r.matrix(n_docs * dim)?;
    let hyper = Hyperparameters {
        mode,
        dim,
        window,
        negative,
        epochs,
        alpha,
        min_alpha,
        min_count,
        workers: 1,
    };
    EmbeddingModel::from_parts(hyper, seed, vocab, words, outputs, docs)
}

/// Writes `id,v0,…,v{dim-1}` rows with a header line.
pub fn write_vectors_csv<T: Real, W: Write>(
    w: W,
    ids: &[String],
    rows: &[Vec<T>],
) -> Result<(), EmbedError> {
    let dim = rows.first().map_or(0, Vec::len);
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string()];
    header.extend((0..dim).map(|i| format!("v{i}")));
    out.write_record(&header)?;
    for (id, row) in ids.iter().zip(rows) {
        let mut rec = Vec::with_capacity(dim + 1);
        rec.push(id.clone());
        rec.extend(row.iter().map(|x| x.to_string()));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_vectors_csv<T: Real, R: Read>(r: R) -> Result<(Vec<String>, Vec<Vec<T>>), EmbedError> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let mut fields = rec.iter();
        let id = fields
            .next()
            .ok_or_else(|| EmbedError::Format("empty CSV row".into()))?;
        let row = fields
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .map(T::lit)
                    .ok_or_else(|| EmbedError::Format(format!("bad value `{f}` for `{id}`")))
            })
            .collect::<Result<Vec<T>, _>>()?;
        ids.push(id.to_string());
        rows.push(row);
    }
    Ok((ids, rows))
}
