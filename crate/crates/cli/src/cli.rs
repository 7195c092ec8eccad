//! The `hclcolor` command line.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with everything that would go to stdout and stderr, so the whole
//! interface can be exercised in-process.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hclcolor::analysis::{self, spectrum_svg, swatch_svg, NamedPalette, SwatchGroup, SwatchLayout};
use hclcolor::cvd::{cvd_matrix, simulate_rgba8, CvdKind};
use hclcolor::manip::{self, Adjustment, LightenMethod, ManipSpace};
use hclcolor::palettes::{PaletteParams, PaletteType, Registry};
use hclcolor::{convert, hex_decode, hex_encode, Color, Execution, Space};

use crate::api::{self, ApiError, ApiResult, GenerateRequest, ParamOverrides};
use crate::registry_file;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "hclcolor",
    version,
    about = "HCL color palettes, conversion, CVD emulation and palette analysis"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Registry file of user palettes: loaded at startup, rewritten by `register`.
    #[arg(long, global = true, value_name = "FILE")]
    pub registry: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)] // parsed once per process
pub enum Command {
    /// Generate a palette from a named palette and/or HCL parameters.
    Generate(GenerateArgs),
    /// List named palettes, optionally of one type.
    List {
        /// qualitative, sequential, sequential-single, sequential-multi, diverging or divergingx.
        #[arg(value_name = "TYPE")]
        kind: Option<String>,
    },
    /// Register a named palette from a JSON parameter object.
    Register {
        name: String,
        /// For example '{"type":"qualitative","h1":0,"c1":60,"l1":80}'.
        json: String,
    },
    /// HCL and RGB spectrum of a color sequence (SVG by default).
    Spec {
        /// Colors; read from stdin when none are given.
        colors: Vec<String>,
        /// Add the RGB spectrum panel.
        #[arg(long)]
        rgb: bool,
    },
    /// Swatch SVG of named palettes, palette types or a color list.
    Swatch(SwatchArgs),
    /// Emulate color vision deficiency on colors or a PNG image.
    Cvd(CvdArgs),
    /// Desaturate, lighten or darken colors.
    Manip(ManipArgs),
    /// Convert colors between color spaces.
    Convert(ConvertArgs),
    /// Maximum in-gamut HCL chroma for hue/luminance pairs (recycled).
    MaxChroma {
        /// Hues, comma-separated.
        #[arg(long = "hue", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        hue: Vec<f64>,
        /// Luminances, comma-separated.
        #[arg(long = "lum", value_delimiter = ',', required = true)]
        lum: Vec<f64>,
    },
    /// Spectrum, inferred palette type and HCL projection (JSON by default).
    Analyze {
        /// Colors; read from stdin when none are given.
        colors: Vec<String>,
    },
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Palette type.
    #[arg(value_name = "TYPE")]
    pub kind: String,
    /// Named palette to start from.
    #[arg(long)]
    pub palette: Option<String>,
    /// Number of colors.
    #[arg(short = 'n', long = "n", default_value_t = 7)]
    pub n: usize,
    /// Reverse the order of the colors.
    #[arg(long)]
    pub rev: bool,
    /// Opacity in [0, 1] appended to every code.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub params: ParamOverrides,
}

#[derive(Debug, Args)]
pub struct SwatchArgs {
    /// Named palettes to draw (repeatable).
    #[arg(long = "palette")]
    pub palettes: Vec<String>,
    /// Draw every named palette of these types (repeatable); "all" for every group.
    #[arg(long = "type")]
    pub kinds: Vec<String>,
    /// Colors per named palette.
    #[arg(short = 'n', long = "n", default_value_t = 7)]
    pub n: usize,
    /// Drawing width in pixels.
    #[arg(long, default_value_t = 400.0)]
    pub width: f64,
    /// Raw colors drawn as one extra row.
    pub colors: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CvdArgs {
    /// deutan, protan or tritan.
    pub kind: String,
    /// Severity in [0, 1].
    pub severity: f64,
    /// Colors, or the path of one PNG image; colors are read from stdin when none are given.
    pub inputs: Vec<String>,
    /// Output PNG path (default: <stem>-<kind>.png next to the input).
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ManipOp {
    Desaturate,
    Lighten,
    Darken,
}

#[derive(Debug, Args)]
pub struct ManipArgs {
    #[arg(value_enum)]
    pub op: ManipOp,
    /// Amount in [0, 1] (lighten/darken may use larger absolute amounts).
    pub amount: f64,
    /// Colors; read from stdin when none are given.
    pub colors: Vec<String>,
    /// Lighten/darken space: hcl, hls or combined.
    #[arg(long)]
    pub space: Option<String>,
    /// Lighten/darken adjustment: relative or absolute.
    #[arg(long)]
    pub adjust: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Source space; without it the values are hex codes.
    #[arg(long)]
    pub from: Option<String>,
    /// Target space, or "hex".
    #[arg(long)]
    pub to: String,
    /// Hex codes, or comma-separated coordinate triples such as 70,50,0.
    #[arg(allow_hyphen_values = true)]
    pub values: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: String,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Directory of static assets served at the root.
    #[arg(long = "static", value_name = "DIR")]
    pub static_dir: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &ApiError) -> Self {
        let code = match e {
            ApiError::Io(_) => EXIT_IO,
            _ => EXIT_VALIDATION,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `stdin` supplies colors to commands invoked without any.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_VALIDATION,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(cli, stdin) {
        Ok(out) => Outcome::ok(out),
        Err(e) => Outcome::error(&e),
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> ApiResult<String> {
    let mut registry = registry_file::load(cli.registry.as_deref())?;
    let exec = Execution::default();
    let format = cli.format;
    match cli.command {
        Command::Generate(args) => cmd_generate(&registry, args, format.unwrap_or(Format::Plain)),
        Command::List { kind } => cmd_list(&registry, kind.as_deref(), format.unwrap_or(Format::Plain)),
        Command::Register { name, json } => cmd_register(
            &mut registry,
            cli.registry.as_deref(),
            &name,
            &json,
            format.unwrap_or(Format::Plain),
        ),
        Command::Spec { colors, rgb } => {
            let colors = colors_or_stdin(colors, stdin)?;
            cmd_spec(&colors, rgb, format.unwrap_or(Format::Svg))
        }
        Command::Swatch(args) => {
            only(format, &[Format::Svg], "swatch")?;
            cmd_swatch(&registry, args)
        }
        Command::Cvd(args) => cmd_cvd(args, stdin, format.unwrap_or(Format::Plain), exec),
        Command::Manip(args) => cmd_manip(args, stdin, format.unwrap_or(Format::Plain)),
        Command::Convert(args) => cmd_convert(args, format.unwrap_or(Format::Plain)),
        Command::MaxChroma { hue, lum } => {
            let fmt = format.unwrap_or(Format::Plain);
            only(Some(fmt), &[Format::Plain, Format::Json], "max-chroma")?;
            let c = manip::max_chroma_vec(&hue, &lum).map_err(ApiError::from)?;
            Ok(match fmt {
                Format::Json => json_line(&c),
                _ => lines(c.iter().map(|v| format!("{v:.2}"))),
            })
        }
        Command::Analyze { colors } => {
            let colors = colors_or_stdin(colors, stdin)?;
            cmd_analyze(colors, format.unwrap_or(Format::Json), exec)
        }
        Command::Serve(args) => crate::service::serve_blocking(registry, cli.registry, args),
    }
}

fn only(format: Option<Format>, allowed: &[Format], command: &str) -> ApiResult<()> {
    match format {
        Some(f) if !allowed.contains(&f) => Err(ApiError::field(
            "format",
            format!("{command} does not support {f:?} output").to_lowercase(),
        )),
        _ => Ok(()),
    }
}

fn json_line<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output serializes");
    s.push('\n');
    s
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

/// Colors from arguments, or else from stdin: a JSON array of strings or
/// codes separated by whitespace or commas.
fn colors_or_stdin(colors: Vec<String>, stdin: &mut dyn Read) -> ApiResult<Vec<String>> {
    if !colors.is_empty() {
        return Ok(colors);
    }
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| ApiError::Io(format!("reading stdin: {e}")))?;
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| ApiError::field("stdin", e.to_string()));
    }
    Ok(text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect())
}

fn parse_type(s: &str) -> ApiResult<PaletteType> {
    s.parse()
        .map_err(|e: hclcolor::Error| ApiError::field("type", e.to_string()))
}

fn cmd_generate(registry: &Registry, args: GenerateArgs, format: Format) -> ApiResult<String> {
    let req = GenerateRequest {
        kind: Some(parse_type(&args.kind)?),
        palette: args.palette,
        n: args.n,
        rev: args.rev,
        alpha: args.alpha,
        params: args.params,
    };
    let colors = api::generate(registry, &req)?;
    match format {
        Format::Plain => Ok(lines(colors)),
        Format::Json => Ok(json_line(&colors)),
        Format::Svg => {
            let name = req.palette.clone().unwrap_or_else(|| args.kind.clone());
            let group = SwatchGroup {
                title: None,
                palettes: vec![NamedPalette::new(name, colors)],
            };
            Ok(swatch_svg(&[group], &SwatchLayout::default()).map_err(ApiError::from)?)
        }
    }
}

fn cmd_list(registry: &Registry, kind: Option<&str>, format: Format) -> ApiResult<String> {
    let filter = kind.map(parse_type).transpose()?;
    let records = api::list(registry, filter);
    match format {
        Format::Json => Ok(json_line(&records)),
        Format::Plain => Ok(lines(records.iter().map(|r| format!("{}\t{}", r.name, r.params.kind)))),
        Format::Svg => Err(ApiError::field("format", "list does not support svg output")),
    }
}

fn cmd_register(
    registry: &mut Registry,
    path: Option<&Path>,
    name: &str,
    json: &str,
    format: Format,
) -> ApiResult<String> {
    let params: PaletteParams = api::parse_json(json.as_bytes())?;
    let out = api::register(
        registry,
        api::RegisterRequest {
            name: name.to_string(),
            params,
        },
    )?;
    if let Some(path) = path {
        registry_file::save(registry, path)?;
    }
    match format {
        Format::Json => Ok(json_line(&out.palette)),
        _ => Ok(format!(
            "registered {} ({})\n",
            out.palette.name, out.palette.params.kind
        )),
    }
}

fn cmd_spec(colors: &[String], rgb: bool, format: Format) -> ApiResult<String> {
    let trace = analysis::spectrum(colors).map_err(api_colors_error)?;
    match format {
        Format::Svg => Ok(spectrum_svg(&trace, rgb).map_err(ApiError::from)?),
        Format::Json => Ok(json_line(&trace)),
        Format::Plain => {
            let mut out = String::from("color\tL\tC\tH\n");
            for k in 0..trace.n {
                out.push_str(&format!(
                    "{}\t{:.2}\t{:.2}\t{:.2}\n",
                    trace.colors[k], trace.luminance[k], trace.chroma[k], trace.hue[k]
                ));
            }
            Ok(out)
        }
    }
}

fn api_colors_error(e: hclcolor::Error) -> ApiError {
    match e {
        hclcolor::Error::Parse { index: Some(i), .. } => ApiError::field(&format!("colors[{i}]"), e.to_string()),
        other => ApiError::field("colors", other.to_string()),
    }
}

fn cmd_swatch(registry: &Registry, args: SwatchArgs) -> ApiResult<String> {
    let out = hclcolor::palettes::Output::default();
    let mut groups = Vec::new();
    let kinds: Vec<PaletteType> = if args.kinds.iter().any(|k| k.eq_ignore_ascii_case("all"))
        || (args.kinds.is_empty() && args.palettes.is_empty() && args.colors.is_empty())
    {
        PaletteType::GROUPS.to_vec()
    } else {
        args.kinds.iter().map(|k| parse_type(k)).collect::<ApiResult<_>>()?
    };
    for kind in kinds {
        // "sequential" expands to both sequential groups.
        for group in PaletteType::GROUPS.iter().filter(|g| kind.matches(**g)) {
            let palettes = registry
                .list(Some(*group))
                .into_iter()
                .map(|r| {
                    Ok(NamedPalette::new(
                        r.name.clone(),
                        registry.generate(&r.name, args.n, None, &out)?,
                    ))
                })
                .collect::<hclcolor::Result<Vec<_>>>()?;
            groups.push(SwatchGroup {
                title: Some(group.title().to_string()),
                palettes,
            });
        }
    }
    if !args.palettes.is_empty() {
        let palettes = args
            .palettes
            .iter()
            .map(|name| {
                let r = registry.lookup(name)?;
                Ok(NamedPalette::new(
                    r.name.clone(),
                    registry.generate(name, args.n, None, &out)?,
                ))
            })
            .collect::<hclcolor::Result<Vec<_>>>()?;
        groups.push(SwatchGroup { title: None, palettes });
    }
    if !args.colors.is_empty() {
        hclcolor::parse_colors(&args.colors).map_err(api_colors_error)?;
        groups.push(SwatchGroup {
            title: None,
            palettes: vec![NamedPalette::new("", args.colors)],
        });
    }
    let layout = SwatchLayout {
        width: args.width,
        ..SwatchLayout::default()
    };
    swatch_svg(&groups, &layout).map_err(ApiError::from)
}

fn is_png(s: &str) -> bool {
    Path::new(s).extension().is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

fn cmd_cvd(args: CvdArgs, stdin: &mut dyn Read, format: Format, exec: Execution) -> ApiResult<String> {
    let kind: CvdKind = args
        .kind
        .parse()
        .map_err(|e: hclcolor::Error| ApiError::field("kind", e.to_string()))?;
    if let [path] = args.inputs.as_slice() {
        if is_png(path) {
            let out = cvd_png(Path::new(path), kind, args.severity, args.output.as_deref(), exec)?;
            let shown = out.display().to_string();
            return Ok(match format {
                Format::Json => json_line(&serde_json::json!({ "output": shown })),
                _ => format!("{shown}\n"),
            });
        }
    }
    only(Some(format), &[Format::Plain, Format::Json], "cvd")?;
    let req = api::CvdRequest {
        colors: colors_or_stdin(args.inputs, stdin)?,
        kind,
        severity: args.severity,
    };
    let colors = api::cvd(&req)?.colors;
    Ok(match format {
        Format::Json => json_line(&colors),
        _ => lines(colors),
    })
}

/// Default output path: `<stem>-<kind>.png` next to the input.
pub fn cvd_output_path(input: &Path, kind: CvdKind) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    input.with_file_name(format!("{stem}-{kind}.png"))
}

/// Maps every pixel of a PNG through the deficiency matrix and writes the
/// result; alpha is kept. Returns the output path.
pub fn cvd_png(
    input: &Path,
    kind: CvdKind,
    severity: f64,
    output: Option<&Path>,
    exec: Execution,
) -> ApiResult<PathBuf> {
    let m = cvd_matrix(kind, severity).map_err(|e| ApiError::field("severity", e.to_string()))?;
    let img = image::open(input).map_err(|e| image_error(input, e))?;
    let mut rgba = img.to_rgba8();
    let width = rgba.width() as usize;
    simulate_rgba8(&mut rgba, width, &m, exec);
    let out = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| cvd_output_path(input, kind));
    rgba.save_with_format(&out, image::ImageFormat::Png)
        .map_err(|e| image_error(&out, e))?;
    Ok(out)
}

fn image_error(path: &Path, e: image::ImageError) -> ApiError {
    let msg = format!("{}: {e}", path.display());
    match e {
        image::ImageError::IoError(_) => ApiError::Io(msg),
        _ => ApiError::field("image", msg),
    }
}

fn cmd_manip(args: ManipArgs, stdin: &mut dyn Read, format: Format) -> ApiResult<String> {
    only(Some(format), &[Format::Plain, Format::Json], "manip")?;
    let colors = colors_or_stdin(args.colors, stdin)?;
    let result = match args.op {
        ManipOp::Desaturate => {
            if args.space.is_some() || args.adjust.is_some() {
                return Err(ApiError::field("space", "desaturate takes no --space or --adjust"));
            }
            manip::desaturate(&colors, args.amount)
        }
        ManipOp::Lighten | ManipOp::Darken => {
            let mut method = if args.op == ManipOp::Lighten {
                LightenMethod::LIGHTEN
            } else {
                LightenMethod::DARKEN
            };
            if let Some(s) = &args.space {
                method.space = s
                    .parse::<ManipSpace>()
                    .map_err(|e| ApiError::field("space", e.to_string()))?;
            }
            if let Some(a) = &args.adjust {
                method.adjustment = a
                    .parse::<Adjustment>()
                    .map_err(|e| ApiError::field("adjust", e.to_string()))?;
            }
            if args.op == ManipOp::Lighten {
                manip::lighten(&colors, args.amount, method)
            } else {
                manip::darken(&colors, args.amount, method)
            }
        }
    };
    let out = result.map_err(|e| match e {
        hclcolor::Error::Parse { .. } => api_colors_error(e),
        other => ApiError::field("amount", other.to_string()),
    })?;
    Ok(match format {
        Format::Json => json_line(&out),
        _ => lines(out),
    })
}

fn parse_space(s: &str, field: &str) -> ApiResult<Space> {
    s.parse()
        .map_err(|e: hclcolor::Error| ApiError::field(field, e.to_string()))
}

fn cmd_convert(args: ConvertArgs, format: Format) -> ApiResult<String> {
    only(Some(format), &[Format::Plain, Format::Json], "convert")?;
    let inputs: Vec<Color> = match &args.from {
        None => args
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| hex_decode(v).map_err(|e| ApiError::field(&format!("values[{i}]"), e.to_string())))
            .collect::<ApiResult<_>>()?,
        Some(from) => {
            let space = parse_space(from, "from")?;
            args.values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let parts: Vec<f64> = v
                        .split(',')
                        .map(|p| p.trim().parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| ApiError::field(&format!("values[{i}]"), e.to_string()))?;
                    let coords: [f64; 3] = parts.try_into().map_err(|_| {
                        ApiError::field(&format!("values[{i}]"), "expected three comma-separated numbers")
                    })?;
                    Ok(Color::new(space, coords))
                })
                .collect::<ApiResult<_>>()?
        }
    };
    if args.to.eq_ignore_ascii_case("hex") {
        let hexes = inputs
            .iter()
            .map(|c| Ok(hex_encode(c, true)?.unwrap_or_else(|| hclcolor::MISSING.to_string())))
            .collect::<hclcolor::Result<Vec<_>>>()?;
        return Ok(match format {
            Format::Json => json_line(&hexes),
            _ => lines(hexes),
        });
    }
    let target = parse_space(&args.to, "to")?;
    let out = inputs
        .iter()
        .map(|c| convert(c, target))
        .collect::<hclcolor::Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => json_line(&out),
        _ => lines(out.iter().map(|c| {
            c.coords
                .iter()
                .map(|v| format!("{v:.6}"))
                .collect::<Vec<_>>()
                .join("\t")
        })),
    })
}

fn cmd_analyze(colors: Vec<String>, format: Format, exec: Execution) -> ApiResult<String> {
    let result = api::analyze(&api::AnalyzeRequest { colors }, exec)?;
    match format {
        Format::Json => Ok(json_line(&result)),
        Format::Svg => Ok(spectrum_svg(&result.trace, false).map_err(ApiError::from)?),
        Format::Plain => {
            let g = &result.inferred;
            Ok(format!(
                "type\t{}{}\nluminance_range\t{:.2}\n",
                g.kind.name(),
                if g.low_confidence { " (low confidence)" } else { "" },
                g.evidence.luminance_range
            ))
        }
    }
}
