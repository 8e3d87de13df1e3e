//! Plain-text serialisation of single-turn inductance tables.
//!
//! The format is line-oriented so that diffs stay readable and any
//! language can parse it. A header of `key = value` lines carries the
//! format version, the table dimensions, and the geometry; `K` blocks
//! follow, each opened by `angle_index <k>` and holding the excitation
//! matrix (`N` rows of `N` entries) and then the signal matrix (`N` rows
//! of `M` entries), whitespace-separated henries. Values are written
//! with 17 significant digits, so a save/load round trip is bit-exact.
//!
//! Loading rebuilds the canonical angle grid `2*pi*k/K` from `K` — the
//! grid itself is never stored — and checks the structural invariants
//! the core crate demands. Reciprocity is *not* a load error: a table
//! asymmetric beyond [`resolver_core::assembly::SELF_SYMMETRY_LIMIT`] is
//! reported as an integrity warning and still loaded, because only the
//! self-inductance assembly actually depends on it and it re-checks.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use resolver_core::assembly::SELF_SYMMETRY_LIMIT;
use resolver_core::{AirgapKind, BasisError, BasisSet, Geometry, MatrixSeries};

/// File format version this module writes and accepts.
pub const FORMAT_VERSION: u32 = 1;

/// Non-fatal observations made while loading a basis file.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisFileWarning {
    /// The excitation table violates reciprocity; self-inductance
    /// assembly will refuse it, mutual assembly will not.
    AsymmetricExcitation {
        /// Worst relative asymmetry found.
        measured: f64,
    },
    /// An excitation self-inductance entry is zero or negative, which no
    /// physical coil produces.
    NonPositiveDiagonal {
        /// Grid index of the offending matrix.
        angle_index: usize,
        /// Tooth whose diagonal entry is non-positive.
        tooth: usize,
    },
}

impl fmt::Display for BasisFileWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AsymmetricExcitation { measured } => write!(
                f,
                "excitation table asymmetry {measured:e} exceeds {SELF_SYMMETRY_LIMIT:e}; \
                 self-inductance assembly will reject these tables"
            ),
            Self::NonPositiveDiagonal { angle_index, tooth } => write!(
                f,
                "excitation diagonal for tooth {tooth} at angle index {angle_index} \
                 is not positive"
            ),
        }
    }
}

/// Failure to read or parse a basis file.
#[derive(Debug)]
pub enum BasisFileError {
    /// Filesystem failure.
    Io(io::Error),
    /// The file declares a version this build does not speak.
    UnsupportedVersion {
        /// Version found in the file.
        found: u32,
    },
    /// A required header key never appeared.
    MissingKey {
        /// The absent key.
        key: &'static str,
    },
    /// A header key appeared that the format does not define.
    UnknownKey {
        /// The unrecognised key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// A value failed to parse as its key's type.
    BadValue {
        /// The key whose value is malformed.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// The signal matrix must span the same teeth as the excitation
    /// matrix (`M = N`).
    UnsupportedShape {
        /// Declared signal column count `M`.
        m: usize,
        /// Declared tooth count `N`.
        n: usize,
    },
    /// Block headers must run `angle_index 0 .. K-1` in order.
    BlockOutOfOrder {
        /// Index the loader expected next.
        expected: usize,
        /// Index the file declared.
        found: usize,
        /// 1-based line number.
        line: usize,
    },
    /// The file ended before `K` complete blocks were read.
    BlockCountMismatch {
        /// `K` from the header.
        declared: usize,
        /// Complete blocks actually present.
        found: usize,
    },
    /// A matrix row holds the wrong number of entries.
    WrongColumnCount {
        /// 1-based line number.
        line: usize,
        /// Entries the dimensions require.
        expected: usize,
        /// Entries found on the line.
        found: usize,
    },
    /// A matrix entry is not a decimal number.
    MalformedNumber {
        /// 1-based line number.
        line: usize,
    },
    /// Content found after the final block.
    TrailingContent {
        /// 1-based line number.
        line: usize,
    },
    /// The assembled tables fail the core invariants.
    Invalid(BasisError),
}

impl fmt::Display for BasisFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "basis file I/O: {e}"),
            Self::UnsupportedVersion { found } => {
                write!(f, "basis file declares format_version {found}, expected {FORMAT_VERSION}")
            }
            Self::MissingKey { key } => write!(f, "basis file header is missing `{key}`"),
            Self::UnknownKey { key, line } => {
                write!(f, "line {line}: unknown basis header key `{key}`")
            }
            Self::BadValue { key, line } => {
                write!(f, "line {line}: malformed value for `{key}`")
            }
            Self::UnsupportedShape { m, n } => {
                write!(f, "signal matrix is {n} x {m}, but this model requires M = N")
            }
            Self::BlockOutOfOrder { expected, found, line } => write!(
                f,
                "line {line}: expected `angle_index {expected}`, found `angle_index {found}` \
                 (blocks must cover the uniform grid in order)"
            ),
            Self::BlockCountMismatch { declared, found } => {
                write!(f, "header declares K = {declared} blocks, file holds {found}")
            }
            Self::WrongColumnCount { line, expected, found } => {
                write!(f, "line {line}: expected {expected} entries, found {found}")
            }
            Self::MalformedNumber { line } => {
                write!(f, "line {line}: matrix entry is not a decimal number")
            }
            Self::TrailingContent { line } => {
                write!(f, "line {line}: content after the final angle block")
            }
            Self::Invalid(e) => write!(f, "loaded tables are invalid: {e}"),
        }
    }
}

impl std::error::Error for BasisFileError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io(e) => Some(e),
            Self::Invalid(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for BasisFileError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// Stable text name for an airgap kind, shared with the config format.
pub(crate) fn airgap_kind_name(kind: AirgapKind) -> &'static str {
    match kind {
        AirgapKind::SinusoidalSalient => "sinusoidal_salient",
        AirgapKind::Uniform => "uniform",
    }
}

/// Writes `basis` to `path`, replacing any existing file.
pub fn save_basis(basis: &BasisSet, path: &Path) -> Result<(), BasisFileError> {
    let g = &basis.geometry;
    let n = g.slot_count;
    let k_count = basis.angle_count();
    let mut text = String::new();
    text.push_str(&format!("format_version = {FORMAT_VERSION}\n"));
    text.push_str(&format!("N = {n}\n"));
    text.push_str(&format!("M = {n}\n"));
    text.push_str(&format!("K = {k_count}\n"));
    text.push_str(&format!("airgap_kind = {}\n", airgap_kind_name(g.airgap_kind)));
    text.push_str(&format!("G_min_mm = {}\n", g.g_min_mm));
    text.push_str(&format!("G_max_mm = {}\n", g.g_max_mm));
    text.push_str(&format!("P = {}\n", g.pole_count));
    text.push_str(&format!("P_w = {}\n", g.winding_pole_pairs));
    text.push_str(&format!("stack_length_mm = {}\n", g.stack_length_mm));
    text.push_str(&format!("D_s_mm = {}\n", g.stator_inner_diameter_mm));
    if let Some(d_r) = g.rotor_outer_diameter_mm {
        text.push_str(&format!("D_r_mm = {d_r}\n"));
    }
    text.push_str(&format!("tooth_span_fraction = {}\n", g.tooth_span_fraction));
    for k in 0..k_count {
        text.push_str(&format!("angle_index {k}\n"));
        for series in [&basis.exc, &basis.sig] {
            for i in 0..n {
                for j in 0..n {
                    if j > 0 {
                        text.push(' ');
                    }
                    text.push_str(&format!("{:.16e}", series.get(k, i, j)));
                }
                text.push('\n');
            }
        }
    }
    let mut file = io::BufWriter::new(fs::File::create(path)?);
    file.write_all(text.as_bytes())?;
    file.flush()?;
    Ok(())
}

/// Everything the header must (or may) declare, collected before the
/// blocks are read.
#[derive(Default)]
struct Header {
    format_version: Option<u32>,
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    airgap_kind: Option<AirgapKind>,
    g_min_mm: Option<f64>,
    g_max_mm: Option<f64>,
    pole_count: Option<u32>,
    winding_pole_pairs: Option<u32>,
    stack_length_mm: Option<f64>,
    stator_inner_diameter_mm: Option<f64>,
    rotor_outer_diameter_mm: Option<f64>,
    tooth_span_fraction: Option<f64>,
}

fn parse_as<T: std::str::FromStr>(
    value: &str,
    key: &str,
    line: usize,
) -> Result<T, BasisFileError> {
    value
        .parse()
        .map_err(|_| BasisFileError::BadValue { key: key.to_owned(), line })
}

impl Header {
    fn apply(&mut self, key: &str, value: &str, line: usize) -> Result<(), BasisFileError> {
        match key {
            "format_version" => self.format_version = Some(parse_as(value, key, line)?),
            "N" => self.n = Some(parse_as(value, key, line)?),
            "M" => self.m = Some(parse_as(value, key, line)?),
            "K" => self.k = Some(parse_as(value, key, line)?),
            "airgap_kind" => {
                self.airgap_kind = Some(match value {
                    "sinusoidal_salient" => AirgapKind::SinusoidalSalient,
                    "uniform" => AirgapKind::Uniform,
                    _ => return Err(BasisFileError::BadValue { key: key.to_owned(), line }),
                })
            }
            "G_min_mm" => self.g_min_mm = Some(parse_as(value, key, line)?),
            "G_max_mm" => self.g_max_mm = Some(parse_as(value, key, line)?),
            "P" => self.pole_count = Some(parse_as(value, key, line)?),
            "P_w" => self.winding_pole_pairs = Some(parse_as(value, key, line)?),
            "stack_length_mm" => self.stack_length_mm = Some(parse_as(value, key, line)?),
            "D_s_mm" => self.stator_inner_diameter_mm = Some(parse_as(value, key, line)?),
            "D_r_mm" => self.rotor_outer_diameter_mm = Some(parse_as(value, key, line)?),
            "tooth_span_fraction" => self.tooth_span_fraction = Some(parse_as(value, key, line)?),
            _ => return Err(BasisFileError::UnknownKey { key: key.to_owned(), line }),
        }
        Ok(())
    }

    fn require<T: Copy>(field: Option<T>, key: &'static str) -> Result<T, BasisFileError> {
        field.ok_or(BasisFileError::MissingKey { key })
    }
}

/// Reads a basis file back into a validated [`BasisSet`].
///
/// Returns the set together with any integrity warnings; see
/// [`BasisFileWarning`] for what is warned about rather than refused.
pub fn load_basis(path: &Path) -> Result<(BasisSet, Vec<BasisFileWarning>), BasisFileError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    // Header: `key = value` until the first block marker.
    let mut header = Header::default();
    let mut pending_block: Option<(usize, &str)> = None;
    for (line_no, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("angle_index") {
            pending_block = Some((line_no, line));
            break;
        }
        match line.split_once('=') {
            Some((key, value)) => header.apply(key.trim(), value.trim(), line_no)?,
            None => {
                return Err(BasisFileError::BadValue { key: line.to_owned(), line: line_no })
            }
        }
    }

    let version = Header::require(header.format_version, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(BasisFileError::UnsupportedVersion { found: version });
    }
    let n = Header::require(header.n, "N")?;
    let m = Header::require(header.m, "M")?;
    let k_count = Header::require(header.k, "K")?;
    if m != n {
        return Err(BasisFileError::UnsupportedShape { m, n });
    }
    let geometry = Geometry {
        slot_count: n,
        airgap_kind: Header::require(header.airgap_kind, "airgap_kind")?,
        g_min_mm: Header::require(header.g_min_mm, "G_min_mm")?,
        g_max_mm: Header::require(header.g_max_mm, "G_max_mm")?,
        pole_count: Header::require(header.pole_count, "P")?,
        winding_pole_pairs: Header::require(header.winding_pole_pairs, "P_w")?,
        stack_length_mm: Header::require(header.stack_length_mm, "stack_length_mm")?,
        stator_inner_diameter_mm: Header::require(header.stator_inner_diameter_mm, "D_s_mm")?,
        rotor_outer_diameter_mm: header.rotor_outer_diameter_mm,
        tooth_span_fraction: Header::require(header.tooth_span_fraction, "tooth_span_fraction")?,
    };

    // Blocks: `angle_index <k>` then N exc rows then N sig rows.
    let mut exc = MatrixSeries::zeros(k_count, n, n);
    let mut sig = MatrixSeries::zeros(k_count, n, n);
    let mut blocks_read = 0usize;
    while blocks_read < k_count {
        let (line_no, line) = match pending_block.take() {
            Some(found) => found,
            None => match lines.find(|(_, l)| !l.trim().is_empty()) {
                Some((no, l)) => (no, l.trim()),
                None => {
                    return Err(BasisFileError::BlockCountMismatch {
                        declared: k_count,
                        found: blocks_read,
                    })
                }
            },
        };
        let found: usize = match line.strip_prefix("angle_index") {
            Some(rest) => parse_as(rest.trim(), "angle_index", line_no)?,
            None => {
                return Err(BasisFileError::BadValue { key: line.to_owned(), line: line_no })
            }
        };
        if found != blocks_read {
            return Err(BasisFileError::BlockOutOfOrder {
                expected: blocks_read,
                found,
                line: line_no,
            });
        }
        for series in [&mut exc, &mut sig] {
            for i in 0..n {
                let (row_no, row) = lines.find(|(_, l)| !l.trim().is_empty()).ok_or(
                    BasisFileError::BlockCountMismatch { declared: k_count, found: blocks_read },
                )?;
                let tokens: Vec<&str> = row.split_whitespace().collect();
                if tokens.len() != n {
                    return Err(BasisFileError::WrongColumnCount {
                        line: row_no,
                        expected: n,
                        found: tokens.len(),
                    });
                }
                for (j, token) in tokens.iter().enumerate() {
                    let value: f64 = token
                        .parse()
                        .map_err(|_| BasisFileError::MalformedNumber { line: row_no })?;
                    series.set(blocks_read, i, j, value);
                }
            }
        }
        blocks_read += 1;
    }
    if let Some((line_no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(BasisFileError::TrailingContent { line: line_no });
    }

    let angle_grid: Vec<f64> = (0..k_count)
        .map(|k| std::f64::consts::TAU * k as f64 / k_count as f64)
        .collect();
    let basis = BasisSet { geometry, angle_grid, exc, sig };
    basis.validate().map_err(BasisFileError::Invalid)?;

    let mut warnings = Vec::new();
    let asymmetry = basis.exc.max_relative_asymmetry();
    if asymmetry > SELF_SYMMETRY_LIMIT {
        warnings.push(BasisFileWarning::AsymmetricExcitation { measured: asymmetry });
    }
    'diagonals: for k in 0..k_count {
        for i in 0..n {
            if !(basis.exc.get(k, i, i) > 0.0) {
                warnings.push(BasisFileWarning::NonPositiveDiagonal { angle_index: k, tooth: i });
                break 'diagonals;
            }
        }
    }
    Ok((basis, warnings))
}
