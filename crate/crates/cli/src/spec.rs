//! Problem and cell input: inline flags and JSON files.
//!
//! A problem file holds one of three shapes: a coefficient triple
//! `{"form": ["A","B","C"]}`, a factored matrix `{"d", "rows"}`, or a full
//! 2x3 problem `{"d", "g1", "g2", "c"}` with surd literals. Validation
//! reports JSON-pointer locations.

use divcell_core::exactnum::Rational;
use divcell_core::homogeneous::HomForm;
use divcell_core::inhomogeneous::Cell;
use divcell_core::Surd;
use serde_json::Value;
use std::fmt;
use std::path::Path;

/// A parsed problem input and where it came from.
#[derive(Debug, Clone)]
pub enum ProblemSpec {
    /// Coefficient triple of `A x^2 + B xy + C y^2`.
    Coefficients(Rational, Rational, Rational),
    /// Factored 2x2 matrix.
    Matrix(HomForm),
    /// Full inhomogeneous 2x3 matrix.
    Problem(Cell),
}

impl ProblemSpec {
    /// Canonical JSON of the spec, shape-preserving.
    pub fn to_json(&self) -> Value {
        match self {
            ProblemSpec::Coefficients(a, b, c) => serde_json::json!({
                "form": [fmt_rat(a), fmt_rat(b), fmt_rat(c)],
            }),
            ProblemSpec::Matrix(m) => serde_json::to_value(m).unwrap(),
            ProblemSpec::Problem(cell) => serde_json::to_value(cell).unwrap(),
        }
    }

    /// The factored form, deriving it from coefficients when needed.
    pub fn form(&self) -> Result<HomForm, SchemaError> {
        match self {
            ProblemSpec::Coefficients(a, b, c) => HomForm::from_coefficients(a, b, c)
                .map_err(|e| SchemaError::root(format!("cannot factor form: {e}"))),
            ProblemSpec::Matrix(m) => Ok(m.clone()),
            ProblemSpec::Problem(cell) => Ok(cell.linear_part()),
        }
    }

    /// The 2x3 problem; forms get a zero translation column.
    pub fn problem(&self) -> Result<Cell, SchemaError> {
        match self {
            ProblemSpec::Problem(cell) => Ok(cell.clone()),
            other => {
                let f = other.form()?;
                let (g1, g2) = f.columns();
                Cell::new(g1, g2, (Surd::zero(), Surd::zero()))
                    .map_err(|e| SchemaError::root(e.to_string()))
            }
        }
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A schema violation with its JSON-pointer location.
#[derive(Debug, Clone)]
pub struct SchemaError {
    pub pointer: String,
    pub msg: String,
}

impl SchemaError {
    fn at(pointer: impl Into<String>, msg: impl Into<String>) -> SchemaError {
        SchemaError { pointer: pointer.into(), msg: msg.into() }
    }

    pub fn root(msg: impl Into<String>) -> SchemaError {
        SchemaError::at("", msg)
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "{}: {}", self.pointer, self.msg)
        }
    }
}

impl std::error::Error for SchemaError {}

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let surd: Surd = text.trim().parse().map_err(|e| format!("{e}"))?;
    surd.as_rational().cloned().ok_or_else(|| "expected a rational, found a surd".to_string())
}

/// `"A,B,C"` as rationals.
pub fn parse_form_flag(text: &str) -> Result<ProblemSpec, SchemaError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(SchemaError::root("expected three comma-separated coefficients"));
    }
    let mut vals = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        vals.push(
            parse_rational(p).map_err(|e| SchemaError::at(format!("/form/{i}"), e))?,
        );
    }
    Ok(ProblemSpec::Coefficients(vals[0].clone(), vals[1].clone(), vals[2].clone()))
}

fn parse_surd_at(text: &str, pointer: String) -> Result<Surd, SchemaError> {
    text.trim().parse::<Surd>().map_err(|e| SchemaError::at(pointer, e.to_string()))
}

/// `"a0,b0;a1,b1"` with surd literals.
pub fn parse_matrix_flag(text: &str) -> Result<ProblemSpec, SchemaError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 2 {
        return Err(SchemaError::root("expected two semicolon-separated rows"));
    }
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 2 {
            return Err(SchemaError::at(format!("/rows/{i}"), "expected two entries"));
        }
        for (j, e) in cols.iter().enumerate() {
            entries.push(parse_surd_at(e, format!("/rows/{i}/{j}"))?);
        }
    }
    HomForm::new(entries[0].clone(), entries[1].clone(), entries[2].clone(), entries[3].clone())
        .map(ProblemSpec::Matrix)
        .map_err(|e| SchemaError::root(e.to_string()))
}

/// `"a0,b0,c0;a1,b1,c1"` with surd literals.
pub fn parse_entries_flag(text: &str) -> Result<ProblemSpec, SchemaError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 2 {
        return Err(SchemaError::root("expected two semicolon-separated rows"));
    }
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 3 {
            return Err(SchemaError::at(format!("/{i}"), "expected three entries"));
        }
        for (j, e) in cols.iter().enumerate() {
            entries.push(parse_surd_at(e, format!("/{i}/{j}"))?);
        }
    }
    Cell::new(
        (entries[0].clone(), entries[3].clone()),
        (entries[1].clone(), entries[4].clone()),
        (entries[2].clone(), entries[5].clone()),
    )
    .map(ProblemSpec::Problem)
    .map_err(|e| SchemaError::root(e.to_string()))
}

fn expect_str<'v>(v: &'v Value, pointer: &str) -> Result<&'v str, SchemaError> {
    v.as_str().ok_or_else(|| SchemaError::at(pointer, "expected a string"))
}

fn expect_pair(v: &Value, pointer: &str) -> Result<(Surd, Surd), SchemaError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| SchemaError::at(pointer, "expected an array of two surd literals"))?;
    let a = parse_surd_at(expect_str(&arr[0], &format!("{pointer}/0"))?, format!("{pointer}/0"))?;
    let b = parse_surd_at(expect_str(&arr[1], &format!("{pointer}/1"))?, format!("{pointer}/1"))?;
    Ok((a, b))
}

fn check_kernel(d: u64, entries: &[&Surd], pointers: &[String]) -> Result<(), SchemaError> {
    for (x, ptr) in entries.iter().zip(pointers) {
        if x.kernel() != 0 && x.kernel() != d {
            return Err(SchemaError::at(
                ptr.clone(),
                format!("kernel sqrt({}) differs from declared d = {}", x.kernel(), d),
            ));
        }
    }
    Ok(())
}

/// Validates and parses a problem-spec JSON value.
pub fn from_json(v: &Value) -> Result<ProblemSpec, SchemaError> {
    let obj = v.as_object().ok_or_else(|| SchemaError::root("expected a JSON object"))?;
    if let Some(form) = obj.get("form") {
        let arr = form
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| SchemaError::at("/form", "expected an array of three rationals"))?;
        let mut vals = Vec::new();
        for (i, e) in arr.iter().enumerate() {
            let ptr = format!("/form/{i}");
            let text = expect_str(e, &ptr)?;
            vals.push(parse_rational(text).map_err(|m| SchemaError::at(ptr, m))?);
        }
        return Ok(ProblemSpec::Coefficients(vals[0].clone(), vals[1].clone(), vals[2].clone()));
    }
    let d = obj
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| SchemaError::at("/d", "expected a nonnegative integer kernel"))?;
    if let Some(rows) = obj.get("rows") {
        let arr = rows
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| SchemaError::at("/rows", "expected two rows"))?;
        let r0 = expect_pair(&arr[0], "/rows/0")?;
        let r1 = expect_pair(&arr[1], "/rows/1")?;
        check_kernel(
            d,
            &[&r0.0, &r0.1, &r1.0, &r1.1],
            &["/rows/0/0".into(), "/rows/0/1".into(), "/rows/1/0".into(), "/rows/1/1".into()],
        )?;
        return HomForm::new(r0.0, r0.1, r1.0, r1.1)
            .map(ProblemSpec::Matrix)
            .map_err(|e| SchemaError::root(e.to_string()));
    }
    if obj.contains_key("g1") {
        let g1 = expect_pair(
            obj.get("g1").unwrap_or(&Value::Null),
            "/g1",
        )?;
        let g2 = expect_pair(
            obj.get("g2").ok_or_else(|| SchemaError::at("/g2", "missing generator"))?,
            "/g2",
        )?;
        let c = expect_pair(
            obj.get("c").ok_or_else(|| SchemaError::at("/c", "missing translation column"))?,
            "/c",
        )?;
        check_kernel(
            d,
            &[&g1.0, &g1.1, &g2.0, &g2.1, &c.0, &c.1],
            &[
                "/g1/0".into(),
                "/g1/1".into(),
                "/g2/0".into(),
                "/g2/1".into(),
                "/c/0".into(),
                "/c/1".into(),
            ],
        )?;
        return Cell::new(g1, g2, c)
            .map(ProblemSpec::Problem)
            .map_err(|e| SchemaError::root(e.to_string()));
    }
    Err(SchemaError::root("expected one of the keys: form, rows, g1"))
}

pub fn load_file(path: &Path) -> Result<ProblemSpec, SchemaError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SchemaError::root(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| SchemaError::root(format!("invalid JSON: {e}")))?;
    from_json(&value)
}
