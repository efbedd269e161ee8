//! On-disk group cache.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic  b"UGCACHE1"
//! tag    u8            1 = matrix, 2 = wreath
//! matrix: p u32, k u32, modulus_len u32, modulus u32 * len, n u32, parity u8,
//!         count u64, then count * n^2 field indices as u16
//! wreath: p u32, r u32, height u32, count u64, width u32,
//!         then count * width values as u32
//! ```
//!
//! Elements appear in the group's canonical index order.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use crate::algebra::{Fe, Field, Mat};
use crate::error::{Error, Result};
use crate::group::{Group, GroupRepr, MatrixGroup};
use crate::unitary::{Parity, UnitarySylow};
use crate::wreath::WreathGroup;

const MAGIC: &[u8; 8] = b"UGCACHE1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheHeader {
    Matrix {
        p: u32,
        k: u32,
        modulus: Vec<u32>,
        n: u32,
        parity: Parity,
        count: u64,
    },
    Wreath {
        p: u32,
        r: u32,
        height: u32,
        count: u64,
        width: u32,
    },
}

impl CacheHeader {
    pub fn for_unitary(g: &Group<UnitarySylow>) -> Self {
        let s = g.repr();
        CacheHeader::Matrix {
            p: s.field().p(),
            k: s.field().k(),
            modulus: s.field().modulus().to_vec(),
            n: s.params().n() as u32,
            parity: s.params().parity(),
            count: g.order() as u64,
        }
    }

    pub fn for_wreath(g: &Group<WreathGroup>) -> Self {
        let spec = g.repr().spec();
        CacheHeader::Wreath {
            p: spec.p(),
            r: spec.r(),
            height: spec.height(),
            count: g.order() as u64,
            width: g.repr().identity().len() as u32,
        }
    }

    fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        match self {
            CacheHeader::Matrix {
                p,
                k,
                modulus,
                n,
                parity,
                count,
            } => {
                w.write_all(&[1])?;
                for v in [*p, *k, modulus.len() as u32] {
                    w.write_all(&v.to_le_bytes())?;
                }
                for c in modulus {
                    w.write_all(&c.to_le_bytes())?;
                }
                w.write_all(&n.to_le_bytes())?;
                w.write_all(&[matches!(parity, Parity::Odd) as u8])?;
                w.write_all(&count.to_le_bytes())?;
            }
            CacheHeader::Wreath {
                p,
                r,
                height,
                count,
                width,
            } => {
                w.write_all(&[2])?;
                for v in [*p, *r, *height] {
                    w.write_all(&v.to_le_bytes())?;
                }
                w.write_all(&count.to_le_bytes())?;
                w.write_all(&width.to_le_bytes())?;
            }
        }
        Ok(())
    }

    fn read<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(truncated)?;
        if &magic != MAGIC {
            return Err(Error::CacheFormat("bad magic".into()));
        }
        let tag = read_u8(r)?;
        match tag {
            1 => {
                let p = read_u32(r)?;
                let k = read_u32(r)?;
                let len = read_u32(r)?;
                if len > 64 {
                    return Err(Error::CacheFormat("modulus too long".into()));
                }
                let modulus = (0..len).map(|_| read_u32(r)).collect::<Result<Vec<_>>>()?;
                let n = read_u32(r)?;
                let parity = match read_u8(r)? {
                    0 => Parity::Even,
                    1 => Parity::Odd,
                    other => return Err(Error::CacheFormat(format!("bad parity byte {other}"))),
                };
                let count = read_u64(r)?;
                Ok(CacheHeader::Matrix {
                    p,
                    k,
                    modulus,
                    n,
                    parity,
                    count,
                })
            }
            2 => Ok(CacheHeader::Wreath {
                p: read_u32(r)?,
                r: read_u32(r)?,
                height: read_u32(r)?,
                count: read_u64(r)?,
                width: read_u32(r)?,
            }),
            other => Err(Error::CacheFormat(format!("unknown representation tag {other}"))),
        }
    }

    fn element_bytes(&self) -> u64 {
        match self {
            CacheHeader::Matrix { n, count, .. } => count * (*n as u64).pow(2) * 2,
            CacheHeader::Wreath { count, width, .. } => count * *width as u64 * 4,
        }
    }
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::CacheFormat("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

fn read_u8<R: Read>(r: &mut R) -> Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(b[0])
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u64::from_le_bytes(b))
}

/// The element section of a unitary Sylow group.
pub fn unitary_elements(g: &Group<UnitarySylow>) -> Vec<u8> {
    let n = g.repr().params().n();
    let mut out = Vec::with_capacity(g.order() * n * n * 2);
    for i in 0..g.order() as u32 {
        for e in g.element(i).entries() {
            out.extend_from_slice(&e.0.to_le_bytes());
        }
    }
    out
}

/// The element section of a wreath tower.
pub fn wreath_elements(g: &Group<WreathGroup>) -> Vec<u8> {
    let mut out = Vec::new();
    for i in 0..g.order() as u32 {
        for v in g.element(i).iter() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

/// A cache file's header and raw element section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheFile {
    pub header: CacheHeader,
    pub elements: Vec<u8>,
}

impl CacheFile {
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(self.elements.len() + 64);
        self.header.write(&mut buf)?;
        buf.extend_from_slice(&self.elements);
        fs::write(path, buf)?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        let mut cursor = &bytes[..];
        let header = CacheHeader::read(&mut cursor)?;
        if cursor.len() as u64 != header.element_bytes() {
            return Err(Error::CacheFormat(format!(
                "element section has {} bytes, expected {}",
                cursor.len(),
                header.element_bytes()
            )));
        }
        Ok(CacheFile {
            header,
            elements: cursor.to_vec(),
        })
    }

    /// Reads `path` if it exists. A present file whose header differs from
    /// `expected` is an error.
    pub fn read_compatible(path: &Path, expected: &CacheHeader) -> Result<Option<Self>> {
        if !path.exists() {
            return Ok(None);
        }
        let file = Self::read_from(path)?;
        if &file.header != expected {
            return Err(Error::CacheMismatch(format!(
                "{} holds {:?}, expected {:?}",
                path.display(),
                file.header,
                expected
            )));
        }
        Ok(Some(file))
    }

    /// Rebuilds a matrix cache as a [`MatrixGroup`] in file order.
    pub fn to_matrix_group(&self) -> Result<MatrixGroup> {
        let CacheHeader::Matrix {
            p, k, modulus, n, ..
        } = &self.header
        else {
            return Err(Error::CacheFormat("not a matrix cache".into()));
        };
        let field = Arc::new(Field::with_modulus(*p, *k, modulus)?);
        let n = *n as usize;
        let size = field.size() as u16;
        let mut elements = Vec::new();
        for chunk in self.elements.chunks_exact(n * n * 2) {
            let entries: Vec<Fe> = chunk
                .chunks_exact(2)
                .map(|b| Fe(u16::from_le_bytes([b[0], b[1]])))
                .collect();
            if entries.iter().any(|e| e.0 >= size) {
                return Err(Error::CacheFormat("field index out of range".into()));
            }
            elements.push(Mat::from_entries(n, &entries)?);
        }
        MatrixGroup::from_elements(field, elements, "cached matrix group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::sylow;
    use crate::wreath::wreath;

    fn tmp(name: &str) -> std::path::PathBuf {
        std::env::temp_dir().join(format!("sylowkit-cache-{}-{name}", std::process::id()))
    }

    #[test]
    fn unitary_round_trip() {
        let g = sylow(5, 5, 3).unwrap();
        let file = CacheFile {
            header: CacheHeader::for_unitary(&g),
            elements: unitary_elements(&g),
        };
        let path = tmp("u");
        file.write_to(&path).unwrap();
        let back = CacheFile::read_compatible(&path, &file.header).unwrap().unwrap();
        assert_eq!(back, file);
        let m = back.to_matrix_group().unwrap();
        assert!(m.verify_closure());
        for i in 0..g.order() {
            assert_eq!(m.element(i), g.repr().element(i));
        }
        let other = CacheHeader::for_unitary(&sylow(5, 5, 2).unwrap());
        assert!(matches!(
            CacheFile::read_compatible(&path, &other),
            Err(Error::CacheMismatch(_))
        ));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn wreath_round_trip_and_corruption() {
        let g = wreath(5, 1, 0).unwrap();
        let file = CacheFile {
            header: CacheHeader::for_wreath(&g),
            elements: wreath_elements(&g),
        };
        let path = tmp("w");
        file.write_to(&path).unwrap();
        assert_eq!(CacheFile::read_from(&path).unwrap(), file);
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.pop();
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(CacheFile::read_from(&path), Err(Error::CacheFormat(_))));
        std::fs::write(&path, b"nonsense").unwrap();
        assert!(matches!(CacheFile::read_from(&path), Err(Error::CacheFormat(_))));
        std::fs::remove_file(&path).unwrap();
        assert!(CacheFile::read_compatible(&path, &file.header).unwrap().is_none());
    }
}
