//! Tabular data loading: parsing, cleaning, encoding, standardization,
//! partitioning, and splitting.
//!
//! The pipeline mirrors a conventional preprocessing flow for mixed
//! numeric/categorical tables: rows containing null tokens are removed,
//! categorical columns are integer-encoded in first-appearance order, numeric
//! columns are z-scored with population statistics, and the label column is
//! binarized against a configured positive token. Every step is a
//! deterministic function of its inputs and an explicit seed.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::Matrix;
use crate::rng::Prng;

/// Default token marking a missing cell.
pub const DEFAULT_NULL_TOKEN: &str = "?";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    Categorical,
}

impl ColumnKind {
    pub fn name(self) -> &'static str {
        match self {
            ColumnKind::Numeric => "numeric",
            ColumnKind::Categorical => "categorical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnRole {
    Feature,
    Label,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub name: String,
    pub kind: ColumnKind,
    pub role: ColumnRole,
}

impl ColumnSpec {
    pub fn feature(name: &str, kind: ColumnKind) -> Self {
        ColumnSpec {
            name: name.to_owned(),
            kind,
            role: ColumnRole::Feature,
        }
    }

    pub fn label(name: &str) -> Self {
        ColumnSpec {
            name: name.to_owned(),
            kind: ColumnKind::Categorical,
            role: ColumnRole::Label,
        }
    }
}

/// Ordered column descriptions for a table.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSchema {
    columns: Vec<ColumnSpec>,
}

impl FeatureSchema {
    /// Validates name uniqueness and at most one label column.
    pub fn new(columns: Vec<ColumnSpec>) -> Result<Self> {
        for (i, a) in columns.iter().enumerate() {
            for b in &columns[..i] {
                if a.name == b.name {
                    return Err(Error::InvalidSchema(format!("duplicate column '{}'", a.name)));
                }
            }
        }
        let labels = columns.iter().filter(|c| c.role == ColumnRole::Label).count();
        if labels > 1 {
            return Err(Error::InvalidSchema(format!("{labels} label columns; at most one allowed")));
        }
        Ok(FeatureSchema { columns })
    }

    /// The built-in census schema: 14 features plus the income label.
    pub fn adult() -> Self {
        use ColumnKind::{Categorical, Numeric};
        let columns = vec![
            ColumnSpec::feature("age", Numeric),
            ColumnSpec::feature("workclass", Categorical),
            ColumnSpec::feature("fnlwgt", Numeric),
            ColumnSpec::feature("education", Categorical),
            ColumnSpec::feature("education-num", Numeric),
            ColumnSpec::feature("marital-status", Categorical),
            ColumnSpec::feature("occupation", Categorical),
            ColumnSpec::feature("relationship", Categorical),
            ColumnSpec::feature("race", Categorical),
            ColumnSpec::feature("sex", Categorical),
            ColumnSpec::feature("capital-gain", Numeric),
            ColumnSpec::feature("capital-loss", Numeric),
            ColumnSpec::feature("hours-per-week", Numeric),
            ColumnSpec::feature("native-country", Categorical),
            ColumnSpec::label("income"),
        ];
        FeatureSchema { columns }
    }

    /// Parses the sidecar format: one `name=kind` line per column, where kind
    /// is `numeric` or `categorical`. Blank lines and `#` comments allowed.
    pub fn parse_sidecar(text: &str) -> Result<Self> {
        let mut columns = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, kind) = line.split_once('=').ok_or_else(|| {
                Error::InvalidSchema(format!("line {}: expected name=kind", lineno + 1))
            })?;
            let kind = match kind.trim() {
                "numeric" => ColumnKind::Numeric,
                "categorical" => ColumnKind::Categorical,
                other => {
                    return Err(Error::InvalidSchema(format!(
                        "line {}: unknown kind '{other}'",
                        lineno + 1
                    )))
                }
            };
            columns.push(ColumnSpec::feature(name.trim(), kind));
        }
        if columns.is_empty() {
            return Err(Error::InvalidSchema("sidecar defines no columns".to_string()));
        }
        FeatureSchema::new(columns)
    }

    /// Returns a copy with `name` as the label column (kind forced to
    /// categorical) and any previous label demoted to a feature.
    pub fn with_label(&self, name: &str) -> Result<Self> {
        if !self.columns.iter().any(|c| c.name == name) {
            return Err(Error::UnknownColumn { name: name.to_owned() });
        }
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let mut c = c.clone();
                if c.name == name {
                    c.role = ColumnRole::Label;
                    c.kind = ColumnKind::Categorical;
                } else if c.role == ColumnRole::Label {
                    // A former label re-enters the feature mix.
                    c.role = ColumnRole::Feature;
                }
                c
            })
            .collect();
        Ok(FeatureSchema { columns })
    }

    pub fn columns(&self) -> &[ColumnSpec] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn label_index(&self) -> Option<usize> {
        self.columns.iter().position(|c| c.role == ColumnRole::Label)
    }

    pub fn feature_indices(&self) -> Vec<usize> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.role == ColumnRole::Feature)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

/// Parsed but not yet typed table: headers plus trimmed text cells.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub header: Vec<String>,
    rows: Vec<Vec<String>>,
    pub null_token: String,
}

impl RawTable {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.header.len()
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn cell(&self, row: usize, col: usize) -> &str {
        &self.rows[row][col]
    }

    /// All cells of one column, in row order.
    pub fn column(&self, col: usize) -> Vec<&str> {
        self.rows.iter().map(|r| r[col].as_str()).collect()
    }
}

/// Parses comma-separated text. Cells are trimmed of surrounding whitespace
/// (the census export uses ", " separators). With `has_header` the first line
/// names the columns; otherwise names are synthesized as col0..colN.
pub fn parse_table(input: &str, has_header: bool, null_token: &str) -> Result<RawTable> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());

    let (first_no, first) = lines.next().ok_or(Error::EmptyInput)?;
    let first_cells = split_cells(first);
    let width = first_cells.len();

    let (header, mut rows) = if has_header {
        (first_cells, Vec::new())
    } else {
        let header = (0..width).map(|i| format!("col{i}")).collect();
        (header, vec![first_cells])
    };
    let _ = first_no;

    for (lineno, line) in lines {
        let cells = split_cells(line);
        if cells.len() != width {
            return Err(Error::RaggedRow {
                line: lineno + 1,
                expected: width,
                found: cells.len(),
            });
        }
        rows.push(cells);
    }

    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }

    Ok(RawTable {
        header,
        rows,
        null_token: null_token.to_owned(),
    })
}

fn split_cells(line: &str) -> Vec<String> {
    line.trim_end_matches('\r')
        .split(',')
        .map(|c| c.trim().to_owned())
        .collect()
}

/// Keeps only rows where no cell equals the null token or is empty.
/// Row order is preserved. Zero surviving rows is legal here; downstream
/// operations reject it.
pub fn drop_incomplete_rows(table: &RawTable) -> RawTable {
    let rows = table
        .rows
        .iter()
        .filter(|r| r.iter().all(|c| !c.is_empty() && *c != table.null_token))
        .cloned()
        .collect();
    RawTable {
        header: table.header.clone(),
        rows,
        null_token: table.null_token.clone(),
    }
}

/// Token-to-code mapping in first-appearance order; the code is the index.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryMap {
    tokens: Vec<String>,
}

impl CategoryMap {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn code_of(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    pub fn token_of(&self, code: usize) -> &str {
        &self.tokens[code]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

/// Integer-encodes a text column. Codes are assigned by first appearance,
/// starting at 0, so decoding through the map inverts the encoding exactly.
pub fn encode_categorical<S: AsRef<str>>(column: &[S]) -> (Vec<usize>, CategoryMap) {
    let mut tokens: Vec<String> = Vec::new();
    let mut codes = Vec::with_capacity(column.len());
    for cell in column {
        let cell = cell.as_ref();
        let code = match tokens.iter().position(|t| t == cell) {
            Some(c) => c,
            None => {
                tokens.push(cell.to_owned());
                tokens.len() - 1
            }
        };
        codes.push(code);
    }
    (codes, CategoryMap { tokens })
}

/// Mean and population standard deviation of a fitted column. `sd == 0.0`
/// is the sentinel for a constant column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnScale {
    pub mean: f64,
    pub sd: f64,
}

/// Z-scores a column: (v − mean) / sd with the given params or ones fit on
/// `values`. A constant column maps to all zeros with sd recorded as 0.
pub fn standardize_column(values: &[f64], fit: Option<ColumnScale>) -> (Vec<f64>, ColumnScale) {
    let params = fit.unwrap_or_else(|| ColumnScale {
        mean: math::mean(values),
        sd: math::sqrt(math::population_variance(values)),
    });
    let z = if params.sd == 0.0 {
        vec![0.0; values.len()]
    } else {
        values.iter().map(|v| (v - params.mean) / params.sd).collect()
    };
    (z, params)
}

/// Per-column metadata of an encoded feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedColumn {
    pub name: String,
    pub kind: ColumnKind,
    /// Present for categorical columns.
    pub categories: Option<CategoryMap>,
    /// Present on numeric columns of a standardized matrix.
    pub scale: Option<ColumnScale>,
}

/// Feature columns of a table as an n×p real matrix: categorical cells hold
/// their integer codes, numeric cells their (optionally z-scored) values.
/// The label column is handled separately via [`binarize_label`].
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedMatrix {
    values: Matrix,
    pub columns: Vec<EncodedColumn>,
}

impl EncodedMatrix {
    /// Assembles a matrix from already-encoded values and column metadata.
    /// Panics if the widths disagree.
    pub fn from_parts(values: Matrix, columns: Vec<EncodedColumn>) -> Self {
        assert_eq!(values.cols(), columns.len(), "column metadata width mismatch");
        EncodedMatrix { values, columns }
    }

    pub fn n_rows(&self) -> usize {
        self.values.rows()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values.get(row, col)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }

    /// Values of one column at the given rows (all rows if `rows` is None).
    pub fn column_values(&self, col: usize, rows: Option<&[usize]>) -> Vec<f64> {
        match rows {
            Some(rows) => rows.iter().map(|&r| self.values.get(r, col)).collect(),
            None => (0..self.n_rows()).map(|r| self.values.get(r, col)).collect(),
        }
    }

    /// A copy with the given feature column removed.
    pub fn drop_column(&self, col: usize) -> EncodedMatrix {
        let p = self.n_features();
        assert!(col < p, "column index out of range");
        let mut data = Vec::with_capacity(self.n_rows() * (p - 1));
        for i in 0..self.n_rows() {
            let row = self.values.row(i);
            data.extend_from_slice(&row[..col]);
            data.extend_from_slice(&row[col + 1..]);
        }
        let mut columns = self.columns.clone();
        columns.remove(col);
        EncodedMatrix {
            values: Matrix::from_rows(data, self.n_rows(), p - 1),
            columns,
        }
    }

    /// A copy restricted to the given rows, preserving column metadata.
    pub fn gather_rows(&self, rows: &[usize]) -> EncodedMatrix {
        EncodedMatrix {
            values: self.values.gather_rows(rows),
            columns: self.columns.clone(),
        }
    }

    /// Z-scores every numeric column with population statistics fit on this
    /// matrix, recording the parameters. Categorical codes pass through.
    pub fn standardized(&self) -> EncodedMatrix {
        let mut out = self.clone();
        for (j, col) in out.columns.iter_mut().enumerate() {
            if col.kind != ColumnKind::Numeric {
                continue;
            }
            let raw: Vec<f64> = (0..self.n_rows()).map(|i| self.values.get(i, j)).collect();
            let (z, params) = standardize_column(&raw, None);
            for (i, v) in z.into_iter().enumerate() {
                out.values.set(i, j, v);
            }
            col.scale = Some(params);
        }
        out
    }
}

/// Encodes the feature columns of a cleaned table per the schema. Categorical
/// codes are assigned in first-appearance order over the whole table; numeric
/// cells must parse as f64.
pub fn encode_table(table: &RawTable, schema: &FeatureSchema) -> Result<EncodedMatrix> {
    if schema.len() != table.n_cols() {
        return Err(Error::InvalidSchema(format!(
            "schema has {} columns but table has {}",
            schema.len(),
            table.n_cols()
        )));
    }
    let feature_cols = schema.feature_indices();
    if feature_cols.is_empty() {
        return Err(Error::NoFeatures);
    }

    let n = table.n_rows();
    let p = feature_cols.len();
    let mut values = Matrix::zeros(n, p);
    let mut columns = Vec::with_capacity(p);

    for (j, &src) in feature_cols.iter().enumerate() {
        let spec = &schema.columns()[src];
        match spec.kind {
            ColumnKind::Numeric => {
                for i in 0..n {
                    let cell = table.cell(i, src);
                    let v: f64 = cell.parse().map_err(|_| Error::NumericParse {
                        row: i + 1,
                        column: spec.name.clone(),
                        cell: cell.to_owned(),
                    })?;
                    values.set(i, j, v);
                }
                columns.push(EncodedColumn {
                    name: spec.name.clone(),
                    kind: ColumnKind::Numeric,
                    categories: None,
                    scale: None,
                });
            }
            ColumnKind::Categorical => {
                let (codes, map) = encode_categorical(&table.column(src));
                for (i, code) in codes.into_iter().enumerate() {
                    values.set(i, j, code as f64);
                }
                columns.push(EncodedColumn {
                    name: spec.name.clone(),
                    kind: ColumnKind::Categorical,
                    categories: Some(map),
                    scale: None,
                });
            }
        }
    }

    Ok(EncodedMatrix { values, columns })
}

/// Disjoint equally sized row-index subsets drawn from a seeded permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetPartition {
    pub subsets: Vec<Vec<usize>>,
    pub subset_size: usize,
    pub seed: u64,
}

/// Shuffles 0..n_rows with a seeded permutation and chops the first k·m
/// indices into k consecutive blocks of m.
pub fn partition_subsets(n_rows: usize, k: usize, m: usize, seed: u64) -> Result<SubsetPartition> {
    let required = k * m;
    if required > n_rows {
        return Err(Error::InsufficientRows {
            required,
            available: n_rows,
        });
    }
    let mut rng = Prng::new(seed);
    let perm = rng.permutation(n_rows);
    let subsets = (0..k).map(|b| perm[b * m..(b + 1) * m].to_vec()).collect();
    Ok(SubsetPartition {
        subsets,
        subset_size: m,
        seed,
    })
}

/// A train/validation division of one subset's row indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPair {
    pub train: Vec<usize>,
    pub valid: Vec<usize>,
    pub fraction: f64,
}

/// Stratified split: per-class seeded shuffle, then ⌈fraction·class_count⌉ of
/// each class to the training side and the rest to validation. If rounding
/// would leave validation empty, one row moves over from the training side of
/// the larger class. Output index lists are sorted ascending.
pub fn stratified_split(
    indices: &[usize],
    labels: &[u8],
    fraction: f64,
    seed: u64,
) -> Result<SplitPair> {
    assert_eq!(indices.len(), labels.len(), "labels must align with indices");
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidConfig(format!("split fraction {fraction} outside (0, 1)")));
    }

    let mut ones: Vec<usize> = Vec::new();
    let mut zeros: Vec<usize> = Vec::new();
    for (&idx, &y) in indices.iter().zip(labels) {
        if y == 1 {
            ones.push(idx);
        } else {
            zeros.push(idx);
        }
    }
    if ones.is_empty() || zeros.is_empty() {
        return Err(Error::DegenerateLabel);
    }

    let mut rng = Prng::new(seed);
    rng.shuffle(&mut ones);
    rng.shuffle(&mut zeros);

    let take = |class: &[usize]| -> usize {
        let t = math::ceil(fraction * class.len() as f64) as usize;
        t.min(class.len())
    };
    let mut take_ones = take(&ones);
    let mut take_zeros = take(&zeros);

    // Ceilings can sweep every row into training (e.g. two rows, one per
    // class, fraction 0.5); give validation one row from the larger class.
    if take_ones == ones.len() && take_zeros == zeros.len() {
        if take_zeros >= take_ones && take_zeros > 0 {
            take_zeros -= 1;
        } else {
            take_ones -= 1;
        }
    }

    let mut train: Vec<usize> = ones[..take_ones]
        .iter()
        .chain(zeros[..take_zeros].iter())
        .copied()
        .collect();
    let mut valid: Vec<usize> = ones[take_ones..]
        .iter()
        .chain(zeros[take_zeros..].iter())
        .copied()
        .collect();
    train.sort_unstable();
    valid.sort_unstable();

    Ok(SplitPair {
        train,
        valid,
        fraction,
    })
}

/// Maps a text label column to bits: 1 where the cell equals the positive
/// token, else 0. Cells and token are compared after trimming whitespace and
/// one trailing '.' (the census test export appends one to every label).
/// An absent positive token yields all zeros; downstream operations reject
/// the degenerate labels, and callers should surface a warning.
pub fn binarize_label<S: AsRef<str>>(column: &[S], positive_token: &str) -> Vec<u8> {
    let positive = normalize_label_token(positive_token);
    column
        .iter()
        .map(|c| u8::from(normalize_label_token(c.as_ref()) == positive))
        .collect()
}

fn normalize_label_token(token: &str) -> &str {
    let t = token.trim();
    t.strip_suffix('.').unwrap_or(t)
}

/// Fully prepared inputs for the experiment runners: the encoded feature
/// matrix both before and after standardization, plus binarized labels.
///
/// Effect sizes are computed on the pre-standardization matrix (the statistic
/// is affine-invariant, so this is a presentation choice); models train on
/// the standardized one. Standardization is fit once over all rows of the
/// working table — not refit per training split — so the usual
/// train/validation leakage caveat applies and is accepted.
#[derive(Debug, Clone)]
pub struct ExperimentData {
    pub raw: EncodedMatrix,
    pub standardized: EncodedMatrix,
    pub labels: Vec<u8>,
    pub label_name: String,
    pub positive_token: String,
}

impl ExperimentData {
    /// Builds experiment data from a cleaned table. The schema must mark
    /// exactly one label column, which must be categorical.
    pub fn from_table(
        table: &RawTable,
        schema: &FeatureSchema,
        positive_token: &str,
    ) -> Result<Self> {
        let label_idx = schema
            .label_index()
            .ok_or_else(|| Error::InvalidSchema("schema has no label column".to_string()))?;
        let label_name = schema.columns()[label_idx].name.clone();
        if table.n_rows() == 0 {
            return Err(Error::EmptyInput);
        }
        let labels = binarize_label(&table.column(label_idx), positive_token);
        let raw = encode_table(table, schema)?;
        let standardized = raw.standardized();
        Ok(ExperimentData {
            raw,
            standardized,
            labels,
            label_name,
            positive_token: positive_token.to_owned(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn positive_count(&self) -> usize {
        self.labels.iter().filter(|&&y| y == 1).count()
    }
}
