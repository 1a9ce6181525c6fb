//! Byte layout of striped files, and encode/decode/repair over shard
//! directories.
//!
//! A file is cut into stripes of `k * M` symbols (`ceil(k*M*w/8)` payload
//! bytes, most-significant bit first within each w-bit symbol). Each stripe
//! encodes to one column of `M` symbols per node, appended to that node's
//! shard file in *physical row order* — the code spec's ordering. A read
//! plan's contiguous row runs therefore map to contiguous byte ranges on
//! disk, which is the operational meaning of skip cost: a helper's byte
//! range count per stripe is one more than the number of gaps its read
//! skips over.
//!
//! Symbols are stored byte-aligned (one byte for `w <= 8`, two big-endian
//! bytes for `w <= 16`) so shards are portable across platforms. All file
//! writes go through a temp-file-plus-rename so crashes never leave a
//! half-written shard or manifest behind.

use std::fs::{self, File};
use std::io::{Read, Seek, SeekFrom};
use std::path::{Path, PathBuf};

use zigzag_core::code::{decode_any_k, encode, Codeword, ZigzagCodeSpec};
use zigzag_core::gf2w::FieldElem;
use zigzag_core::repair::{
    compute_metrics, execute_repair, plan_repair, ReadPlan, RecoveryCase, RepairMetrics,
};

use crate::error::CliError;
use crate::manifest::Manifest;
use crate::specfile::LoadedSpec;

/// File name of each node's shard inside its directory.
pub const SHARD_NAME: &str = "shard.bin";

/// Directory name for a node.
pub fn node_dir(node: usize) -> String {
    format!("node_{node:02}")
}

/// Path of a node's shard file under `dir`.
pub fn shard_path(dir: &Path, node: usize) -> PathBuf {
    dir.join(node_dir(node)).join(SHARD_NAME)
}

/// Writes a file atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

/// Byte geometry of one code spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    /// Total nodes.
    pub n: usize,
    /// Systematic nodes.
    pub k: usize,
    /// Rows per column.
    pub rows: usize,
    /// Symbol width in bits.
    pub w: u32,
    /// Bytes per stored symbol: `ceil(w / 8)`.
    pub symbol_bytes: usize,
    /// Payload bytes per stripe: `ceil(k * rows * w / 8)`.
    pub payload_bytes: usize,
    /// Bytes each shard grows per stripe: `rows * symbol_bytes`.
    pub shard_stripe_bytes: usize,
}

impl Layout {
    /// Computes the geometry of `spec`.
    pub fn of(spec: &ZigzagCodeSpec) -> Layout {
        let w = spec.field().w();
        let symbol_bytes = w.div_ceil(8) as usize;
        let rows = spec.rows();
        let k = spec.k();
        Layout {
            n: spec.n(),
            k,
            rows,
            w,
            symbol_bytes,
            payload_bytes: (k * rows * w as usize).div_ceil(8),
            shard_stripe_bytes: rows * symbol_bytes,
        }
    }
}

/// Packs symbols into bytes, `w` bits each, most significant bit first.
/// Trailing bits of the last byte are zero.
pub fn pack_symbols(symbols: &[FieldElem], w: u32) -> Vec<u8> {
    let total_bits = symbols.len() * w as usize;
    let mut out = vec![0u8; total_bits.div_ceil(8)];
    let mut bit = 0usize;
    for &sym in symbols {
        for i in (0..w).rev() {
            if (sym >> i) & 1 == 1 {
                out[bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    out
}

/// Unpacks `count` symbols of `w` bits each, most significant bit first.
pub fn unpack_symbols(bytes: &[u8], w: u32, count: usize) -> Vec<FieldElem> {
    let mut out = Vec::with_capacity(count);
    let mut bit = 0usize;
    for _ in 0..count {
        let mut sym: FieldElem = 0;
        for _ in 0..w {
            let b = (bytes[bit / 8] >> (7 - bit % 8)) & 1;
            sym = (sym << 1) | b as FieldElem;
            bit += 1;
        }
        out.push(sym);
    }
    out
}

/// Splits one stripe of payload into the `k x M` message grid. Symbols are
/// consumed column by column (node order), rows in physical order within
/// each column.
pub fn message_from_payload(spec: &ZigzagCodeSpec, chunk: &[u8]) -> Vec<Vec<FieldElem>> {
    let layout = Layout::of(spec);
    let symbols = unpack_symbols(chunk, layout.w, layout.k * layout.rows);
    let mut iter = symbols.into_iter();
    (0..layout.k)
        .map(|_| {
            let mut column = vec![0; layout.rows];
            for pos in 0..layout.rows {
                let g = spec.ordering().elem_at(pos);
                column[g.bits() as usize] = iter.next().expect("counted above");
            }
            column
        })
        .collect()
}

/// Inverse of [`message_from_payload`].
pub fn payload_from_message(spec: &ZigzagCodeSpec, message: &[Vec<FieldElem>]) -> Vec<u8> {
    let layout = Layout::of(spec);
    let mut symbols = Vec::with_capacity(layout.k * layout.rows);
    for column in message {
        for pos in 0..layout.rows {
            let g = spec.ordering().elem_at(pos);
            symbols.push(column[g.bits() as usize]);
        }
    }
    pack_symbols(&symbols, layout.w)
}

/// Renders one node column (indexed by group bits) as shard bytes: symbols
/// in physical row order, each big-endian `symbol_bytes` wide.
pub fn shard_stripe_from_column(spec: &ZigzagCodeSpec, column: &[FieldElem]) -> Vec<u8> {
    let layout = Layout::of(spec);
    let mut out = Vec::with_capacity(layout.shard_stripe_bytes);
    for pos in 0..layout.rows {
        let sym = column[spec.ordering().elem_at(pos).bits() as usize];
        if layout.symbol_bytes == 2 {
            out.push((sym >> 8) as u8);
        }
        out.push(sym as u8);
    }
    out
}

/// Inverse of [`shard_stripe_from_column`].
pub fn column_from_shard_stripe(spec: &ZigzagCodeSpec, bytes: &[u8]) -> Vec<FieldElem> {
    let layout = Layout::of(spec);
    let mut column = vec![0; layout.rows];
    for pos in 0..layout.rows {
        let offset = pos * layout.symbol_bytes;
        let sym = if layout.symbol_bytes == 2 {
            (bytes[offset] as FieldElem) << 8 | bytes[offset + 1] as FieldElem
        } else {
            bytes[offset] as FieldElem
        };
        column[spec.ordering().elem_at(pos).bits() as usize] = sym;
    }
    column
}

/// Outcome of encoding a file into a shard directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeReport {
    /// Stripes written to every shard.
    pub stripes: u64,
    /// Size of each shard file in bytes.
    pub shard_bytes: u64,
    /// Zero bytes appended to the payload.
    pub padding: u64,
}

/// Encodes `input` into `out_dir`: `n` node directories each holding one
/// shard, plus a manifest. The input is zero-padded to a whole number of
/// stripes; byte counts are recorded in the manifest so decoding restores
/// the exact original.
pub fn encode_file(
    loaded: &LoadedSpec,
    input: &Path,
    out_dir: &Path,
) -> Result<(Manifest, EncodeReport), CliError> {
    let spec = &loaded.spec;
    let layout = Layout::of(spec);
    let data = fs::read(input).map_err(|e| CliError::io(input, e))?;

    let stripes = data.len().div_ceil(layout.payload_bytes);
    let padded_len = stripes * layout.payload_bytes;
    let padding = padded_len - data.len();
    let mut padded = data;
    padded.resize(padded_len, 0);

    let mut shards: Vec<Vec<u8>> =
        vec![Vec::with_capacity(stripes * layout.shard_stripe_bytes); layout.n];
    for chunk in padded.chunks(layout.payload_bytes) {
        let message = message_from_payload(spec, chunk);
        let codeword = encode(spec, &message).map_err(CliError::usage)?;
        for (node, shard) in shards.iter_mut().enumerate() {
            shard.extend_from_slice(&shard_stripe_from_column(spec, codeword.column(node)));
        }
    }

    for (node, shard) in shards.iter().enumerate() {
        let dir = out_dir.join(node_dir(node));
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        write_atomic(&shard_path(out_dir, node), shard)?;
    }
    let manifest = Manifest::new(
        loaded.file.clone(),
        stripes as u64,
        padded_len as u64 - padding as u64,
        padding as u64,
    );
    manifest.write_to(out_dir)?;
    let report = EncodeReport {
        stripes: stripes as u64,
        shard_bytes: (stripes * layout.shard_stripe_bytes) as u64,
        padding: padding as u64,
    };
    Ok((manifest, report))
}

/// Nodes under `dir` whose shard exists with the expected size.
fn available_nodes(dir: &Path, layout: &Layout, stripes: u64) -> Vec<usize> {
    let expect = stripes * layout.shard_stripe_bytes as u64;
    (0..layout.n)
        .filter(|&node| {
            fs::metadata(shard_path(dir, node)).map(|m| m.len() == expect).unwrap_or(false)
        })
        .collect()
}

/// Outcome of decoding a shard directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    /// The `k` shards actually read.
    pub nodes_used: Vec<usize>,
    /// Stripes decoded.
    pub stripes: u64,
    /// Bytes written to the output file.
    pub bytes_written: u64,
}

/// Decodes the original file from any `k` available shards under `dir`.
pub fn decode_file(dir: &Path, output: &Path) -> Result<DecodeReport, CliError> {
    let manifest = Manifest::read_from(dir)?;
    let loaded = manifest.spec.resolve()?;
    let spec = &loaded.spec;
    let layout = Layout::of(spec);

    let available = available_nodes(dir, &layout, manifest.stripe_count);
    if available.len() < layout.k {
        return Err(CliError::verification(format!(
            "only {} intact shard(s) of the {} needed are present",
            available.len(),
            layout.k
        )));
    }
    let survivors: Vec<usize> = available[..layout.k].to_vec();

    let mut shard_data = Vec::with_capacity(survivors.len());
    for &node in &survivors {
        let path = shard_path(dir, node);
        shard_data.push(fs::read(&path).map_err(|e| CliError::io(&path, e))?);
    }

    let mut out = Vec::with_capacity(manifest.original_len as usize);
    for stripe in 0..manifest.stripe_count as usize {
        let mut columns = vec![vec![0; layout.rows]; layout.n];
        for (i, &node) in survivors.iter().enumerate() {
            let offset = stripe * layout.shard_stripe_bytes;
            let bytes = &shard_data[i][offset..offset + layout.shard_stripe_bytes];
            columns[node] = column_from_shard_stripe(spec, bytes);
        }
        let codeword = Codeword::from_columns(spec.m(), columns).map_err(CliError::usage)?;
        let message =
            decode_any_k(spec, &codeword, &survivors).map_err(CliError::verification)?;
        out.extend_from_slice(&payload_from_message(spec, &message));
    }
    out.truncate(manifest.original_len as usize);
    write_atomic(output, &out)?;
    Ok(DecodeReport {
        nodes_used: survivors,
        stripes: manifest.stripe_count,
        bytes_written: manifest.original_len,
    })
}

/// One helper's read pattern during a planned repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperRead {
    /// Helper node index.
    pub node: usize,
    /// Rows read per stripe (always `M / 2`).
    pub rows_per_stripe: usize,
    /// Contiguous byte ranges per stripe: `1 +` the number of gaps the
    /// helper's skip cost induces.
    pub ranges_per_stripe: usize,
    /// Bytes read per stripe.
    pub bytes_per_stripe: usize,
    /// The helper's skip cost (rows jumped over inside its span).
    pub skip: u32,
}

/// How a shard was rebuilt.
#[derive(Debug, Clone, PartialEq)]
pub enum RepairKind {
    /// Half-row planned repair of a systematic node.
    Planned {
        /// Which recovery case applied.
        case: RecoveryCase,
        /// The two parity nodes used.
        parity_pair: (usize, usize),
        /// The subgroup's defining equation.
        subgroup: String,
        /// Per-helper read patterns.
        helpers: Vec<HelperRead>,
        /// Plan metrics (computed fresh, never cached).
        metrics: RepairMetrics,
    },
    /// Parity rebuild: full decode of `k` shards, then re-encode.
    FullDecode {
        /// Shards read in full.
        nodes_read: Vec<usize>,
        /// Why the planned path did not apply.
        notice: String,
    },
}

/// Outcome of repairing one shard.
#[derive(Debug, Clone, PartialEq)]
pub struct RepairFileReport {
    /// The rebuilt node.
    pub failed: usize,
    /// Stripes restored.
    pub stripes: u64,
    /// Where the rebuilt shard landed.
    pub restored: PathBuf,
    /// The read pattern used.
    pub kind: RepairKind,
}

/// Maximal runs of consecutive positions, as `(start_position, length)`.
fn contiguous_runs(positions: &[usize]) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &pos in positions {
        match runs.last_mut() {
            Some((start, len)) if *start + *len == pos => *len += 1,
            _ => runs.push((pos, 1)),
        }
    }
    runs
}

/// Rebuilds node `failed`'s shard under `dir`.
///
/// Systematic nodes use a half-row read plan (the family's own assignment
/// when the manifest names a family, otherwise the generic planner) and
/// read *only* the planned byte ranges from each helper shard. Parity nodes
/// fall back to a full decode plus re-encode, with a notice in the report.
pub fn repair_file(dir: &Path, failed: usize) -> Result<RepairFileReport, CliError> {
    let manifest = Manifest::read_from(dir)?;
    let loaded = manifest.spec.resolve()?;
    let spec = &loaded.spec;
    let layout = Layout::of(spec);
    if failed >= layout.n {
        return Err(CliError::usage(format!(
            "node {failed} out of range; the code has {} nodes",
            layout.n
        )));
    }
    if failed >= layout.k {
        return repair_parity_by_decode(dir, &manifest, &loaded, failed);
    }

    let plan: ReadPlan = match &loaded.construction {
        Some(code) => code.repair_plan(failed),
        None => plan_repair(spec, failed),
    }
    .map_err(CliError::verification)?;

    let missing: Vec<usize> = plan
        .helpers()
        .iter()
        .map(|h| h.node)
        .filter(|&node| {
            fs::metadata(shard_path(dir, node))
                .map(|m| m.len() != manifest.stripe_count * layout.shard_stripe_bytes as u64)
                .unwrap_or(true)
        })
        .collect();
    if !missing.is_empty() {
        return Err(CliError::verification(format!(
            "missing or truncated helper shard(s): {missing:?}"
        )));
    }

    // Each helper's rows as physical positions, grouped into runs; the plan
    // lists rows in physical order already.
    let helper_runs: Vec<(usize, Vec<(usize, usize)>)> = plan
        .helpers()
        .iter()
        .map(|h| {
            let positions: Vec<usize> =
                h.rows.iter().map(|g| spec.ordering().index_of(g)).collect();
            debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
            (h.node, contiguous_runs(&positions))
        })
        .collect();

    let mut files: Vec<File> = Vec::with_capacity(helper_runs.len());
    for (node, _) in &helper_runs {
        let path = shard_path(dir, *node);
        files.push(File::open(&path).map_err(|e| CliError::io(&path, e))?);
    }

    let mut restored = Vec::with_capacity(
        manifest.stripe_count as usize * layout.shard_stripe_bytes,
    );
    for stripe in 0..manifest.stripe_count as usize {
        let stripe_base = stripe * layout.shard_stripe_bytes;
        let mut columns = vec![vec![0; layout.rows]; layout.n];
        for (file, (node, runs)) in files.iter_mut().zip(&helper_runs) {
            for &(start, len) in runs {
                let mut buf = vec![0u8; len * layout.symbol_bytes];
                let offset = (stripe_base + start * layout.symbol_bytes) as u64;
                file.seek(SeekFrom::Start(offset))
                    .and_then(|_| file.read_exact(&mut buf))
                    .map_err(|e| CliError::io(shard_path(dir, *node), e))?;
                for i in 0..len {
                    let g = spec.ordering().elem_at(start + i);
                    let sym = if layout.symbol_bytes == 2 {
                        (buf[2 * i] as FieldElem) << 8 | buf[2 * i + 1] as FieldElem
                    } else {
                        buf[i] as FieldElem
                    };
                    columns[*node][g.bits() as usize] = sym;
                }
            }
        }
        let codeword = Codeword::from_columns(spec.m(), columns).map_err(CliError::usage)?;
        let column =
            execute_repair(spec, &codeword, &plan).map_err(CliError::verification)?;
        restored.extend_from_slice(&shard_stripe_from_column(spec, &column));
    }

    let out_path = shard_path(dir, failed);
    let parent = out_path.parent().expect("shard paths have parents");
    fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    write_atomic(&out_path, &restored)?;

    let metrics = compute_metrics(spec, &plan);
    let helpers: Vec<HelperRead> = helper_runs
        .iter()
        .zip(&metrics.per_helper)
        .map(|((node, runs), cost)| {
            debug_assert_eq!(*node, cost.node);
            HelperRead {
                node: *node,
                rows_per_stripe: cost.rows_read,
                ranges_per_stripe: runs.len(),
                bytes_per_stripe: cost.rows_read * layout.symbol_bytes,
                skip: cost.skip,
            }
        })
        .collect();
    Ok(RepairFileReport {
        failed,
        stripes: manifest.stripe_count,
        restored: out_path,
        kind: RepairKind::Planned {
            case: plan.case(),
            parity_pair: plan.parity_pair(),
            subgroup: plan.subgroup().to_string(),
            helpers,
            metrics,
        },
    })
}

fn repair_parity_by_decode(
    dir: &Path,
    manifest: &Manifest,
    loaded: &LoadedSpec,
    failed: usize,
) -> Result<RepairFileReport, CliError> {
    let spec = &loaded.spec;
    let layout = Layout::of(spec);
    let available: Vec<usize> = available_nodes(dir, &layout, manifest.stripe_count)
        .into_iter()
        .filter(|&node| node != failed)
        .collect();
    if available.len() < layout.k {
        return Err(CliError::verification(format!(
            "only {} intact shard(s) of the {} needed are present",
            available.len(),
            layout.k
        )));
    }
    let survivors: Vec<usize> = available[..layout.k].to_vec();
    let mut shard_data = Vec::with_capacity(survivors.len());
    for &node in &survivors {
        let path = shard_path(dir, node);
        shard_data.push(fs::read(&path).map_err(|e| CliError::io(&path, e))?);
    }

    let mut restored = Vec::with_capacity(
        manifest.stripe_count as usize * layout.shard_stripe_bytes,
    );
    for stripe in 0..manifest.stripe_count as usize {
        let offset = stripe * layout.shard_stripe_bytes;
        let mut columns = vec![vec![0; layout.rows]; layout.n];
        for (i, &node) in survivors.iter().enumerate() {
            let bytes = &shard_data[i][offset..offset + layout.shard_stripe_bytes];
            columns[node] = column_from_shard_stripe(spec, bytes);
        }
        let codeword = Codeword::from_columns(spec.m(), columns).map_err(CliError::usage)?;
        let message =
            decode_any_k(spec, &codeword, &survivors).map_err(CliError::verification)?;
        let reencoded = encode(spec, &message).map_err(CliError::usage)?;
        restored.extend_from_slice(&shard_stripe_from_column(spec, reencoded.column(failed)));
    }

    let out_path = shard_path(dir, failed);
    let parent = out_path.parent().expect("shard paths have parents");
    fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    write_atomic(&out_path, &restored)?;
    Ok(RepairFileReport {
        failed,
        stripes: manifest.stripe_count,
        restored: out_path,
        kind: RepairKind::FullDecode {
            nodes_read: survivors,
            notice: format!(
                "node {failed} is a parity node; planned half-row repair applies to \
                 systematic nodes, so it was rebuilt by full decode"
            ),
        },
    })
}
