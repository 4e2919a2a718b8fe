//! JSON interchange for weight sets and channel fixtures.
//!
//! Channel matrices use `{rows, cols, entries}` with `[re, im]` pairs in
//! column-major order.  Weight sets carry their matrices row-major and list
//! decoding groups with 1-based symbol indices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::codes::WeightSet;
use crate::linalg::ComplexMatrix;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
struct WeightSetJson {
    #[serde(rename = "name")]
    name: String,
    t: usize,
    n: usize,
    k: usize,
    #[serde(rename = "groups")]
    groups: Vec<Vec<usize>>,
    #[serde(rename = "matrices")]
    matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Serializes a channel matrix (entries column-major).
pub fn channel_to_json(h: &ComplexMatrix) -> String {
    let mut entries = Vec::with_capacity(h.rows() * h.cols());
    for j in 0..h.cols() {
        for i in 0..h.rows() {
            let z = h.get(i, j);
            entries.push([z.re, z.im]);
        }
    }
    serde_json::to_string_pretty(&ChannelJson { rows: h.rows(), cols: h.cols(), entries })
        .expect("channel serialization cannot fail")
}

/// Parses a channel matrix from its JSON form.
pub fn channel_from_json(text: &str) -> Result<ComplexMatrix> {
    let parsed: ChannelJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if parsed.entries.len() != parsed.rows * parsed.cols {
        return Err(Error::Parse(format!(
            "expected {} entries for a {} x {} matrix, found {}",
            parsed.rows * parsed.cols,
            parsed.rows,
            parsed.cols,
            parsed.entries.len()
        )));
    }
    let mut h = ComplexMatrix::zeros(parsed.rows, parsed.cols);
    for (idx, [re, im]) in parsed.entries.iter().enumerate() {
        h.set(idx % parsed.rows, idx / parsed.rows, Complex64::new(*re, *im));
    }
    Ok(h)
}

/// Serializes a weight set (matrices row-major, groups 1-based).
pub fn weight_set_to_json(w: &WeightSet) -> String {
    let matrices = w
        .matrices
        .iter()
        .map(|a| {
            (0..a.rows())
                .map(|i| {
                    (0..a.cols())
                        .map(|j| {
                            let z = a.get(i, j);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let groups = w.groups.iter().map(|g| g.iter().map(|&i| i + 1).collect()).collect();
    serde_json::to_string_pretty(&WeightSetJson {
        name: w.name.clone(),
        t: w.t,
        n: w.n,
        k: w.k,
        groups,
        matrices,
    })
    .expect("weight set serialization cannot fail")
}

/// Parses a weight set from its JSON form, checking shape consistency.
pub fn weight_set_from_json(text: &str) -> Result<WeightSet> {
    let parsed: WeightSetJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if parsed.matrices.len() != parsed.k {
        return Err(Error::Parse(format!(
            "expected {} matrices, found {}",
            parsed.k,
            parsed.matrices.len()
        )));
    }
    let mut matrices = Vec::with_capacity(parsed.k);
    for (idx, rows) in parsed.matrices.iter().enumerate() {
        if rows.len() != parsed.t || rows.iter().any(|r| r.len() != parsed.n) {
            return Err(Error::Parse(format!(
                "matrix {} is not {} x {}",
                idx + 1,
                parsed.t,
                parsed.n
            )));
        }
        matrices.push(ComplexMatrix::from_fn(parsed.t, parsed.n, |i, j| {
            let [re, im] = rows[i][j];
            Complex64::new(re, im)
        }));
    }
    let groups: Vec<Vec<usize>> = parsed
        .groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|&i| {
                    if i == 0 || i > parsed.k {
                        Err(Error::Parse(format!("group index {i} outside 1..{}", parsed.k)))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let w = WeightSet {
        name: parsed.name,
        t: parsed.t,
        n: parsed.n,
        k: parsed.k,
        matrices,
        groups,
    };
    if !w.groups_are_partition() {
        return Err(Error::Parse("groups are not a partition of 1..K".into()));
    }
    Ok(w)
}
