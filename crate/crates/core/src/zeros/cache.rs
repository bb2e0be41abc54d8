use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{ZeroCache, ZeroRecord, FORMAT_VERSION};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "index,gamma,err_bound";
pub const BINARY_MAGIC: [u8; 8] = *b"ZMZEROS\0";

fn record_line(r: &ZeroRecord) -> String {
    format!("{},{},{:e}\n", r.index, r.gamma, r.err_bound)
}

fn checksum(lines: &str) -> String {
    let digest = Sha256::digest(lines.as_bytes());
    digest[..8].iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptCache(msg.into())
}

impl ZeroCache {
    /// Serialises the cache as CSV with a checksummed trailer line.
    pub fn to_csv(&self) -> String {
        let body: String = self.records.iter().map(record_line).collect();
        format!(
            "{CSV_HEADER}\n{body}# t_max_certified={} version={} count={} checksum={}\n",
            self.t_max_certified,
            self.format_version,
            self.records.len(),
            checksum(&body)
        )
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines: Vec<&str> = text.split_inclusive('\n').collect();
        if lines.first().map(|l| l.trim_end()) != Some(CSV_HEADER) {
            return Err(corrupt("missing header"));
        }
        let trailer = lines
            .pop()
            .filter(|l| l.starts_with("# ") && l.ends_with('\n'))
            .ok_or_else(|| corrupt("missing trailer (truncated file?)"))?;
        let mut t_max = None;
        let mut version = None;
        let mut count = None;
        let mut sum = None;
        for kv in trailer[2..].split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| corrupt(format!("bad trailer field {kv}")))?;
            match k {
                "t_max_certified" => t_max = v.parse::<f64>().ok(),
                "version" => version = v.parse::<u32>().ok(),
                "count" => count = v.parse::<usize>().ok(),
                "checksum" => sum = Some(v.to_string()),
                _ => {}
            }
        }
        let version = version.ok_or_else(|| corrupt("trailer lacks version"))?;
        if version != FORMAT_VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        let t_max = t_max.ok_or_else(|| corrupt("trailer lacks t_max_certified"))?;
        let body: String = lines[1..].concat();
        if let Some(sum) = sum {
            if sum != checksum(&body) {
                return Err(corrupt("checksum mismatch"));
            }
        }
        let records = lines[1..]
            .iter()
            .map(|l| parse_record(l.trim_end()))
            .collect::<Result<Vec<_>>>()?;
        if count.is_some_and(|c| c != records.len()) {
            return Err(corrupt("record count mismatch"));
        }
        let cache = ZeroCache {
            t_max_certified: t_max,
            records,
            format_version: version,
        };
        cache.check_structure()?;
        Ok(cache)
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(&text)
    }

    /// Binary sidecar: magic, u32 version, f64 t_max_certified, u64 count,
    /// then (u64 index, f64 gamma, f64 err_bound) per record, little-endian.
    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(28 + 24 * self.records.len());
        out.extend_from_slice(&BINARY_MAGIC);
        out.extend_from_slice(&self.format_version.to_le_bytes());
        out.extend_from_slice(&self.t_max_certified.to_le_bytes());
        out.extend_from_slice(&(self.records.len() as u64).to_le_bytes());
        for r in &self.records {
            out.extend_from_slice(&r.index.to_le_bytes());
            out.extend_from_slice(&r.gamma.to_le_bytes());
            out.extend_from_slice(&r.err_bound.to_le_bytes());
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self> {
        let take8 = |at: usize| -> Result<[u8; 8]> {
            bytes
                .get(at..at + 8)
                .map(|s| s.try_into().expect("slice of length 8"))
                .ok_or_else(|| corrupt("binary cache truncated"))
        };
        if take8(0)? != BINARY_MAGIC {
            return Err(corrupt("bad magic"));
        }
        let version = u32::from_le_bytes(
            bytes
                .get(8..12)
                .ok_or_else(|| corrupt("binary cache truncated"))?
                .try_into()
                .expect("slice of length 4"),
        );
        if version != FORMAT_VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        let t_max = f64::from_le_bytes(take8(12)?);
        let count = u64::from_le_bytes(take8(20)?) as usize;
        if bytes.len() != 28 + 24 * count {
            return Err(corrupt("binary cache length does not match count"));
        }
        let records = (0..count)
            .map(|i| {
                let at = 28 + 24 * i;
                Ok(ZeroRecord {
                    index: u64::from_le_bytes(take8(at)?),
                    gamma: f64::from_le_bytes(take8(at + 8)?),
                    err_bound: f64::from_le_bytes(take8(at + 16)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cache = ZeroCache {
            t_max_certified: t_max,
            records,
            format_version: version,
        };
        cache.check_structure()?;
        Ok(cache)
    }

    pub fn save_binary(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_binary()).map_err(|e| Error::io(path, e))
    }

    pub fn load_binary(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_binary(&bytes)
    }

    /// Loads either format, choosing by the leading magic bytes.
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        if bytes.starts_with(&BINARY_MAGIC) {
            Self::from_binary(&bytes)
        } else {
            let text = String::from_utf8(bytes).map_err(|_| corrupt("not UTF-8"))?;
            Self::from_csv(&text)
        }
    }

    fn check_structure(&self) -> Result<()> {
        let mut prev = 0.0;
        for (i, r) in self.records.iter().enumerate() {
            if r.index != i as u64 + 1 {
                return Err(corrupt(format!("index {} at position {}", r.index, i + 1)));
            }
            if !(r.gamma > prev) || !(r.err_bound > 0.0) {
                return Err(corrupt(format!("record {} out of order", r.index)));
            }
            prev = r.gamma;
        }
        Ok(())
    }
}

fn parse_record(line: &str) -> Result<ZeroRecord> {
    let bad = || corrupt(format!("bad record line {line:?}"));
    let mut it = line.split(',');
    let (Some(i), Some(g), Some(e), None) = (it.next(), it.next(), it.next(), it.next()) else {
        return Err(bad());
    };
    Ok(ZeroRecord {
        index: i.parse().map_err(|_| bad())?,
        gamma: g.parse().map_err(|_| bad())?,
        err_bound: e.parse().map_err(|_| bad())?,
    })
}
