//! Enumeration of all finite quandles up to isomorphism, with a persistent
//! on-disk catalog.
//!
//! Tables are generated column by column (each column is a permutation
//! fixing its own index) with incremental distributivity pruning, then
//! deduplicated by canonical form: the lexicographically least flattened
//! table over all relabelings.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quandle::FiniteQuandle;

/// Hard ceiling: above this, canonical relabeling over all `N!` permutations
/// and the sheer number of tables are no longer desk-scale.
pub const DEFAULT_CATALOG_CAP: usize = 6;

pub const CATALOG_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("requested size {requested} exceeds the catalog cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("catalog io error: {0}")]
    Io(#[from] io::Error),
    #[error("catalog file corrupt: {0}")]
    Corrupt(String),
}

/// All quandles of each size up to isomorphism, sizes `1..=max_size`.
pub struct Catalog {
    by_size: Vec<Vec<FiniteQuandle>>,
}

impl Catalog {
    /// Builds the catalog in memory.
    pub fn build(max_size: usize, cap: usize) -> Result<Catalog, CatalogError> {
        if max_size > cap {
            return Err(CatalogError::CapExceeded { requested: max_size, cap });
        }
        let by_size = (1..=max_size).map(enumerate_size).collect();
        Ok(Catalog { by_size })
    }

    /// Loads per-size files `qcat-N.json` from `dir`, building and writing
    /// any missing sizes, and refreshes the manifest.
    pub fn load_or_build(dir: &Path, max_size: usize, cap: usize) -> Result<Catalog, CatalogError> {
        if max_size > cap {
            return Err(CatalogError::CapExceeded { requested: max_size, cap });
        }
        fs::create_dir_all(dir)?;
        let mut by_size = Vec::new();
        for n in 1..=max_size {
            let path = dir.join(format!("qcat-{n}.json"));
            let tables = if path.exists() {
                let text = fs::read_to_string(&path)?;
                let file: CatalogFile = serde_json::from_str(&text)
                    .map_err(|e| CatalogError::Corrupt(format!("{}: {e}", path.display())))?;
                if file.format_version != CATALOG_FORMAT_VERSION || file.size != n {
                    return Err(CatalogError::Corrupt(format!(
                        "{}: wrong version or size",
                        path.display()
                    )));
                }
                file.tables
                    .iter()
                    .map(|t| {
                        FiniteQuandle::validate(t).map_err(|e| {
                            CatalogError::Corrupt(format!("{}: {e}", path.display()))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                let tables = enumerate_size(n);
                let file = CatalogFile {
                    format_version: CATALOG_FORMAT_VERSION,
                    size: n,
                    count: tables.len(),
                    tables: tables.iter().map(FiniteQuandle::rows).collect(),
                };
                fs::write(&path, serde_json::to_string(&file).expect("catalog serializes"))?;
                tables
            };
            by_size.push(tables);
        }
        let catalog = Catalog { by_size };
        catalog.write_manifest(dir)?;
        Ok(catalog)
    }

    fn write_manifest(&self, dir: &Path) -> io::Result<()> {
        let manifest = Manifest {
            format_version: CATALOG_FORMAT_VERSION,
            counts: self.counts(),
        };
        fs::write(
            dir.join("manifest.json"),
            serde_json::to_string(&manifest).expect("manifest serializes"),
        )
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len()
    }

    pub fn of_size(&self, n: usize) -> &[FiniteQuandle] {
        &self.by_size[n - 1]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }

    /// All catalogued quandles in increasing size, deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = &FiniteQuandle> {
        self.by_size.iter().flatten()
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    format_version: u32,
    size: usize,
    count: usize,
    tables: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    format_version: u32,
    counts: Vec<usize>,
}

/// Lexicographically least flattened table over all relabelings.
pub fn canonical_form(q: &FiniteQuandle) -> Vec<usize> {
    let n = q.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    loop {
        // relabeled[sigma(a)][sigma(b)] = sigma(q[a][b])
        let mut flat = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[perm[a] * n + perm[b]] = perm[q.op(a, b)];
            }
        }
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("at least the identity relabeling")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All quandles of size `n` up to isomorphism, as canonical-form tables in
/// ascending order.
pub fn enumerate_size(n: usize) -> Vec<FiniteQuandle> {
    let mut canonical: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(n);
    search_columns(n, &mut columns, &mut canonical);
    canonical
        .into_iter()
        .map(|flat| {
            let rows: Vec<Vec<usize>> =
                (0..n).map(|a| flat[a * n..(a + 1) * n].to_vec()).collect();
            FiniteQuandle::validate(&rows).expect("canonical tables are quandles")
        })
        .collect()
}

fn search_columns(n: usize, columns: &mut Vec<Vec<usize>>, out: &mut BTreeSet<Vec<usize>>) {
    let next = columns.len();
    if next == n {
        let rows: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| columns[b][a]).collect()).collect();
        if let Ok(q) = FiniteQuandle::validate(&rows) {
            out.insert(canonical_form(&q));
        }
        return;
    }
    // candidate columns: permutations fixing their own index
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        if images[next] == next {
            columns.push(images.clone());
            if distributivity_consistent(n, columns) {
                search_columns(n, columns, out);
            }
            columns.pop();
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
}

/// Checks every distributivity triple whose entries are all determined by
/// the columns placed so far: `(a*b)*c = (a*c)*(b*c)` needs columns `b`, `c`
/// and `b*c`.
fn distributivity_consistent(n: usize, columns: &[Vec<usize>]) -> bool {
    let placed = columns.len();
    let op = |a: usize, b: usize| columns[b][a];
    for b in 0..placed {
        for c in 0..placed {
            let bc = op(b, c);
            if bc >= placed {
                continue;
            }
            for a in 0..n {
                if op(op(a, b), c) != op(op(a, c), bc) {
                    return false;
                }
            }
        }
    }
    true
}
