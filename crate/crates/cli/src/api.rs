//! Request and response types shared by the command line and the HTTP
//! service, and the operations behind them. Both front ends call these
//! functions, so identical logical requests give identical results.

use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use hclcolor::analysis::{self, Analysis, PickQuery, PickResult, SpectrumTrace};
use hclcolor::cvd::{cvd_matrix, simulate_cvd, CvdKind};
use hclcolor::palettes::{Output, PaletteParams, PaletteRecord, PaletteType, Registry};
use hclcolor::{Error, Execution};

/// Largest palette or color list accepted in one request.
pub const MAX_COLORS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ApiError {
    #[error("{message}")]
    Validation { message: String, fields: Vec<FieldError> },
    #[error("{message}")]
    NotFound { message: String, suggestions: Vec<String> },
    #[error("{0}")]
    Io(String),
}

pub type ApiResult<T> = Result<T, ApiError>;

impl ApiError {
    pub fn field(field: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        ApiError::Validation {
            fields: vec![FieldError {
                field: field.to_string(),
                message: message.clone(),
            }],
            message: format!("{field}: {message}"),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        ApiError::Validation {
            message: message.into(),
            fields: Vec::new(),
        }
    }

    /// Re-labels a library error with the request field it came from.
    fn from_core(e: Error, field: &str) -> Self {
        match e {
            Error::NotFound { .. } => e.into(),
            Error::Parse { index: Some(i), .. } => ApiError::field(&format!("{field}[{i}]"), e.to_string()),
            other => ApiError::field(field, other.to_string()),
        }
    }

    /// Machine-readable error body.
    pub fn body(&self) -> Value {
        match self {
            ApiError::Validation { message, fields } => serde_json::json!({
                "error": "validation",
                "message": message,
                "fields": fields,
            }),
            ApiError::NotFound { message, suggestions } => serde_json::json!({
                "error": "not_found",
                "message": message,
                "suggestions": suggestions,
            }),
            ApiError::Io(message) => serde_json::json!({ "error": "io", "message": message }),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound { ref suggestions, .. } => ApiError::NotFound {
                suggestions: suggestions.clone(),
                message: e.to_string(),
            },
            other => ApiError::invalid(other.to_string()),
        }
    }
}

/// Deserializes `value`, reporting the path of the offending field.
pub fn from_value<T: DeserializeOwned>(value: Value) -> ApiResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "body".to_string() } else { path };
        ApiError::field(&field, e.into_inner().to_string())
    })
}

pub fn parse_json<T: DeserializeOwned>(bytes: &[u8]) -> ApiResult<T> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| ApiError::field("body", e.to_string()))?;
    from_value(value)
}

fn into_object(value: Value) -> ApiResult<Map<String, Value>> {
    match value {
        Value::Object(m) => Ok(m),
        _ => Err(ApiError::field("body", "expected a JSON object")),
    }
}

/// Optional HCL parameters, used as a complete specification or as
/// overrides of a named palette.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    /// First hue (degrees).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<f64>,
    /// Second hue (degrees).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<f64>,
    /// Third hue of a divergingx palette (degrees).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h3: Option<f64>,
    /// First chroma.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    /// Second chroma.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    /// Third chroma of a divergingx palette.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c3: Option<f64>,
    /// Peak chroma of a triangular trajectory.
    #[arg(long, alias = "cmax1")]
    #[serde(default, alias = "cmax1", skip_serializing_if = "Option::is_none")]
    pub cmax: Option<f64>,
    /// Peak chroma of the second divergingx arm.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cmax2: Option<f64>,
    /// First luminance.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<f64>,
    /// Second luminance.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l2: Option<f64>,
    /// Third luminance of a divergingx palette.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l3: Option<f64>,
    /// Chroma power.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    /// Luminance power.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
    /// Chroma power of the second divergingx arm.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p3: Option<f64>,
    /// Luminance power of the second divergingx arm.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p4: Option<f64>,
    /// Clamp out-of-gamut colors (default true); false yields "NA".
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixup: Option<bool>,
}

impl ParamOverrides {
    pub fn to_params(&self, kind: PaletteType) -> PaletteParams {
        let p = self.clone();
        PaletteParams {
            kind,
            h1: p.h1,
            h2: p.h2,
            h3: p.h3,
            c1: p.c1,
            c2: p.c2,
            c3: p.c3,
            cmax: p.cmax,
            cmax2: p.cmax2,
            l1: p.l1,
            l2: p.l2,
            l3: p.l3,
            p1: p.p1,
            p2: p.p2,
            p3: p.p3,
            p4: p.p4,
            fixup: p.fixup,
        }
    }
}

/// Palette generation by name, by explicit parameters, or both (explicit
/// parameters override the named palette's).
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GenerateRequest {
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<PaletteType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub palette: Option<String>,
    pub n: usize,
    pub rev: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(flatten)]
    pub params: ParamOverrides,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GenerateHead {
    #[serde(rename = "type", default)]
    kind: Option<PaletteType>,
    #[serde(default)]
    palette: Option<String>,
    n: usize,
    #[serde(default)]
    rev: bool,
    #[serde(default)]
    alpha: Option<f64>,
}

impl GenerateRequest {
    const HEAD: [&'static str; 5] = ["type", "palette", "n", "rev", "alpha"];

    /// Parses a request object; unknown fields are rejected by name.
    pub fn from_json(value: Value) -> ApiResult<Self> {
        let mut rest = into_object(value)?;
        let mut head = Map::new();
        for key in Self::HEAD {
            if let Some(v) = rest.remove(key) {
                head.insert(key.to_string(), v);
            }
        }
        let h: GenerateHead = from_value(Value::Object(head))?;
        let params: ParamOverrides = from_value(Value::Object(rest))?;
        Ok(GenerateRequest {
            kind: h.kind,
            palette: h.palette,
            n: h.n,
            rev: h.rev,
            alpha: h.alpha,
            params,
        })
    }

    /// The full parameter set this request denotes.
    pub fn resolve_params(&self, registry: &Registry) -> ApiResult<PaletteParams> {
        match &self.palette {
            Some(name) => {
                let record = registry.lookup(name)?;
                let kind = record.params.kind;
                if let Some(want) = self.kind {
                    if !want.matches(kind) {
                        return Err(ApiError::field(
                            "type",
                            format!("palette {:?} is {kind}, not {want}", record.name),
                        ));
                    }
                }
                Ok(record.params.overlay(&self.params.to_params(kind)))
            }
            None => {
                let kind = self
                    .kind
                    .ok_or_else(|| ApiError::field("type", "give a palette type or a palette name"))?;
                Ok(self.params.to_params(kind))
            }
        }
    }
}

/// Generates the colors of a request.
pub fn generate(registry: &Registry, req: &GenerateRequest) -> ApiResult<Vec<String>> {
    if req.n > MAX_COLORS {
        return Err(ApiError::field("n", format!("at most {MAX_COLORS} colors")));
    }
    if let Some(a) = req.alpha {
        if !(0.0..=1.0).contains(&a) {
            return Err(ApiError::field("alpha", "must lie in [0, 1]"));
        }
    }
    let params = req.resolve_params(registry)?;
    let out = Output {
        rev: req.rev,
        alpha: req.alpha,
    };
    hclcolor::palettes::generate(req.n, &params, &out).map_err(|e| ApiError::from_core(e, "params"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateResponse {
    pub colors: Vec<String>,
    pub trace: SpectrumTrace,
}

/// Colors plus their HCL spectrum; needs at least one color.
pub fn generate_with_trace(registry: &Registry, req: &GenerateRequest) -> ApiResult<GenerateResponse> {
    if req.n == 0 {
        return Err(ApiError::field("n", "must be at least 1"));
    }
    let colors = generate(registry, req)?;
    // Colors without a code (fixup disabled) are left out of the spectrum.
    let coded: Vec<&String> = colors.iter().filter(|c| c.as_str() != hclcolor::MISSING).collect();
    if coded.is_empty() {
        return Err(ApiError::field(
            "fixup",
            "no color of the palette lies in the sRGB gamut",
        ));
    }
    let trace = analysis::spectrum(&coded).map_err(|e| ApiError::from_core(e, "colors"))?;
    Ok(GenerateResponse { colors, trace })
}

pub fn list(registry: &Registry, filter: Option<PaletteType>) -> Vec<PaletteRecord> {
    registry.list(filter).into_iter().cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ListResponse {
    pub palettes: Vec<PaletteRecord>,
}

fn check_colors(colors: &[String], min: usize) -> ApiResult<()> {
    if colors.len() < min {
        return Err(ApiError::field(
            "colors",
            format!("need at least {min} colors, got {}", colors.len()),
        ));
    }
    if colors.len() > MAX_COLORS {
        return Err(ApiError::field("colors", format!("at most {MAX_COLORS} colors")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CvdRequest {
    pub colors: Vec<String>,
    pub kind: CvdKind,
    #[serde(default = "CvdRequest::full")]
    pub severity: f64,
}

impl CvdRequest {
    fn full() -> f64 {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorsResponse {
    pub colors: Vec<String>,
}

pub fn cvd(req: &CvdRequest) -> ApiResult<ColorsResponse> {
    check_colors(&req.colors, 0)?;
    let m = cvd_matrix(req.kind, req.severity).map_err(|e| ApiError::from_core(e, "severity"))?;
    let colors = simulate_cvd(&req.colors, &m).map_err(|e| ApiError::from_core(e, "colors"))?;
    Ok(ColorsResponse { colors })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeRequest {
    pub colors: Vec<String>,
}

pub fn analyze(req: &AnalyzeRequest, exec: Execution) -> ApiResult<Analysis> {
    check_colors(&req.colors, 3)?;
    analysis::analyze(&req.colors, exec).map_err(|e| ApiError::from_core(e, "colors"))
}

pub fn pick(q: &PickQuery, exec: Execution) -> ApiResult<PickResult> {
    analysis::pick(q, exec).map_err(|e| ApiError::from_core(e, "query"))
}

/// A palette to register: its name plus parameters, in registry-file form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegisterRequest {
    pub name: String,
    #[serde(flatten)]
    pub params: PaletteParams,
}

impl RegisterRequest {
    pub fn from_json(value: Value) -> ApiResult<Self> {
        let mut rest = into_object(value)?;
        let name = match rest.remove("name") {
            Some(Value::String(s)) => s,
            Some(_) => return Err(ApiError::field("name", "expected a string")),
            None => return Err(ApiError::field("name", "missing field `name`")),
        };
        let params: PaletteParams = from_value(Value::Object(rest))?;
        Ok(RegisterRequest { name, params })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterResponse {
    pub palette: PaletteRecord,
}

pub fn register(registry: &mut Registry, req: RegisterRequest) -> ApiResult<RegisterResponse> {
    let palette = registry
        .register(&req.name, req.params)
        .map_err(|e| ApiError::from_core(e, "params"))?
        .clone();
    Ok(RegisterResponse { palette })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn generate_by_name_and_override() {
        let reg = Registry::builtin();
        let req =
            GenerateRequest::from_json(json!({"type": "qualitative", "palette": "set2", "n": 4, "l1": 80})).unwrap();
        let direct =
            GenerateRequest::from_json(json!({"type": "qualitative", "n": 4, "h1": 0, "h2": 270, "c1": 60, "l1": 80}))
                .unwrap();
        assert_eq!(generate(&reg, &req).unwrap(), generate(&reg, &direct).unwrap());
    }

    #[test]
    fn unknown_field_is_named() {
        let err = GenerateRequest::from_json(json!({"type": "qualitative", "n": 4, "h9": 1})).unwrap_err();
        let ApiError::Validation { fields, .. } = err else {
            panic!()
        };
        assert!(fields[0].message.contains("h9"));
        let err = GenerateRequest::from_json(json!({"type": "qualitative", "n": -1})).unwrap_err();
        let ApiError::Validation { fields, .. } = err else {
            panic!()
        };
        assert_eq!(fields[0].field, "n");
    }

    #[test]
    fn type_mismatch_and_not_found() {
        let reg = Registry::builtin();
        let req = GenerateRequest::from_json(json!({"type": "sequential", "palette": "Dark 3", "n": 3})).unwrap();
        assert!(matches!(generate(&reg, &req), Err(ApiError::Validation { .. })));
        let req = GenerateRequest::from_json(json!({"palette": "Dark 4", "n": 3})).unwrap();
        assert!(matches!(generate(&reg, &req), Err(ApiError::NotFound { .. })));
    }

    #[test]
    fn cvd_parse_error_points_at_color() {
        let req = CvdRequest {
            colors: vec!["#000000".into(), "nope".into()],
            kind: CvdKind::Protan,
            severity: 1.0,
        };
        let ApiError::Validation { fields, .. } = cvd(&req).unwrap_err() else {
            panic!()
        };
        assert_eq!(fields[0].field, "colors[1]");
    }
}
