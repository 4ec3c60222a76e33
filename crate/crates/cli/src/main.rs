use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chitransform::euler::euler_integral;
use chitransform::geometry::{rasterize, BBox};
use chitransform::index::bessel_index;
use chitransform::io::{
    decode_pgm, encode_pgm, field_to_csv, field_to_json, parse_raster, raster_to_csv,
    raster_to_json, report_to_json, scene_to_json, DiskSpec, SceneSpec,
};
use chitransform::pipeline::{discriminate, localize, localize_raster, LocalizeParams};
use chitransform::transforms::{
    bessel_transform, bessel_transform_raster, fourier_transform, sva_transform,
};
use chitransform::{
    BesselParams, Direction, Error, GridFunction, GridSpec, NormProfile, Point, Scene, SvaFamily,
    TransformField,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "chitransform", version, about = "Euler-characteristic integral transforms of planar scenes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rasterize a scene (or a random one from --seed) into an integer raster.
    Synth(SynthArgs),
    /// Print the Euler integral of a raster.
    Integrate(InputArgs),
    /// Numeric Euler-Bessel transform of a scene or raster.
    Bessel(FieldArgs),
    /// Numeric Euler-Fourier transform (projected width) per direction.
    Fourier(FourierArgs),
    /// Spatially variant apodization over rotated square norms.
    Sva(SvaArgs),
    /// Closed-form Euclidean Bessel transform of a scene at given points.
    Index(IndexArgs),
    /// Count targets and report the deepest minima of the transform.
    Localize(LocalizeArgs),
    /// Compare norms and report which one responds best at each candidate.
    Discriminate(DiscriminateArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Scene JSON or raster file (CSV, JSON or PGM); `-` reads stdin.
    input: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    /// Output grid size in cells.
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    grid: Option<Vec<usize>>,
    /// Cell size. Defaults to fitting the scene with a margin.
    #[arg(long)]
    spacing: Option<f64>,
    /// Lower-left corner of the grid. Defaults to centering on the scene.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    origin: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone)]
struct SampleArgs {
    /// Radial step. Defaults to half the grid spacing.
    #[arg(long)]
    dr: Option<f64>,
    /// Angular samples per contour.
    #[arg(long, default_value_t = BesselParams::DEFAULT_ANGLES)]
    angles: usize,
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    /// Output file; stdout when absent or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Pgm,
    Json,
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Scene JSON. Omit and pass --seed for a random scene.
    input: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutArgs,
    /// Seed for a random scene of disjoint disks.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random targets.
    #[arg(long, default_value_t = 3)]
    targets: usize,
    /// Also write the random scene as JSON.
    #[arg(long)]
    scene_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    sample: SampleArgs,
    #[command(flatten)]
    out: OutArgs,
    /// l2, l1, linf or linf-rot:<degrees>.
    #[arg(long, default_value = "l2")]
    norm: String,
}

#[derive(Args, Debug)]
struct FourierArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Direction in degrees; repeatable. Without it, --directions evenly
    /// spaced directions over a half turn are used.
    #[arg(long = "direction", allow_negative_numbers = true)]
    directions_deg: Vec<f64>,
    #[arg(long = "directions", default_value_t = 8)]
    count: usize,
    /// Offset step. Defaults to a thousandth of the support diameter.
    #[arg(long)]
    dr: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct SvaArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    sample: SampleArgs,
    #[command(flatten)]
    out: OutArgs,
    /// Number of rotations of the square norm in the family.
    #[arg(long, default_value_t = 8)]
    sva_rotations: usize,
    /// Also write the field as a PGM image.
    #[arg(long)]
    image: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IndexArgs {
    /// Scene JSON.
    input: PathBuf,
    /// Evaluation point; repeatable.
    #[arg(long = "point", num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    point: Vec<f64>,
    /// File of `x,y` lines.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Only l2 has a closed form.
    #[arg(long, default_value = "l2")]
    norm: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct LocalizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    sample: SampleArgs,
    #[arg(long, default_value = "l2")]
    norm: String,
    /// Minimum persistence of a reported minimum (default 4·dr).
    #[arg(long)]
    prominence: Option<f64>,
    /// JSON report; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the transform field.
    #[arg(long)]
    field: Option<PathBuf>,
    /// Format of --field.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct DiscriminateArgs {
    /// Scene JSON.
    input: PathBuf,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    sample: SampleArgs,
    /// Norm to compare; repeatable. Defaults to l2 and linf.
    #[arg(long = "norm")]
    norms: Vec<String>,
    /// Add an SVA family of this many rotated square norms.
    #[arg(long)]
    sva_rotations: Option<usize>,
    #[arg(long)]
    prominence: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure classes with their exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::InvalidParameter { .. } | Error::InvalidGrid(_) | Error::GridTooSmall { .. } => {
                Failure::Usage(m)
            }
            Error::Parse { .. } | Error::InvalidPolygon(_) | Error::SupportOnBorder { .. } | Error::Io(_) => {
                Failure::Input(m)
            }
            Error::InvalidProfile(_) => Failure::Invariant(m),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_bytes(path: &Path) -> Outcome<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Outcome<String> {
    String::from_utf8(read_bytes(path)?)
        .map_err(|_| Failure::Input(format!("{}: not UTF-8 text", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

/// What an input file holds.
enum Input {
    Scene(Scene),
    Raster(GridFunction),
}

fn load(path: &Path) -> Outcome<Input> {
    let bytes = read_bytes(path)?;
    if bytes.starts_with(b"P5") {
        return Ok(Input::Raster(pgm_raster(&bytes).map_err(|e| in_file(path, e))?));
    }
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::Input(format!("{}: not UTF-8 text", path.display())))?;
    if text.trim_start().starts_with('{') {
        let is_raster = serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| v.as_object().map(|o| o.contains_key("values")))
            .unwrap_or(false);
        if !is_raster {
            let scene = chitransform::io::parse_scene(&text).map_err(|e| in_file(path, e))?;
            return Ok(Input::Scene(scene));
        }
    }
    Ok(Input::Raster(parse_raster(&text).map_err(|e| in_file(path, e))?))
}

fn load_scene(path: &Path) -> Outcome<Scene> {
    match load(path)? {
        Input::Scene(s) => Ok(s),
        Input::Raster(_) => Err(Failure::Input(format!("{}: expected a scene, found a raster", path.display()))),
    }
}

fn pgm_raster(bytes: &[u8]) -> chitransform::Result<GridFunction> {
    let (spec, values) = decode_pgm(bytes)?;
    let ints = values
        .iter()
        .map(|&v| {
            if v.fract() == 0.0 && v.abs() < 9.0e15 {
                Ok(v as i64)
            } else {
                Err(Error::Parse {
                    location: "pgm data".into(),
                    message: format!("raster value {v} is not an integer"),
                })
            }
        })
        .collect::<chitransform::Result<Vec<i64>>>()?;
    GridFunction::new(spec, ints)
}

fn parse_norm(s: &str) -> Outcome<NormProfile> {
    NormProfile::parse(s).map_err(|e| Failure::Usage(e.to_string()))
}

const DEFAULT_GRID: usize = 128;

/// Output grid: explicit flags win; otherwise the raster's own grid, or a
/// grid centered on the scene with a 10% margin.
fn resolve_grid(args: &GridArgs, support: Option<BBox>, raster: Option<&GridSpec>) -> Outcome<GridSpec> {
    let explicit = args.grid.is_some() || args.spacing.is_some() || args.origin.is_some();
    if let (Some(spec), false) = (raster, explicit) {
        return Ok(*spec);
    }
    let (w, h) = match &args.grid {
        Some(v) => (v[0], v[1]),
        None => raster.map_or((DEFAULT_GRID, DEFAULT_GRID), |s| (s.width, s.height)),
    };
    if w < 3 || h < 3 {
        return Err(Failure::Usage(format!("--grid needs at least 3x3 cells, got {w}x{h}")));
    }
    let bbox = support.unwrap_or(BBox::new(Point::new(-1.0, -1.0), Point::new(1.0, 1.0)));
    let spacing = match args.spacing {
        Some(s) if s.is_finite() && s > 0.0 => s,
        Some(s) => return Err(Failure::Usage(format!("--spacing must be positive, got {s}"))),
        None => {
            let fit = (bbox.width() / (w - 2) as f64).max(bbox.height() / (h - 2) as f64);
            if fit > 0.0 {
                1.1 * fit
            } else {
                1.0
            }
        }
    };
    let spec = match &args.origin {
        Some(o) => GridSpec::new(w, h, Point::new(o[0], o[1]), spacing),
        None => GridSpec::centered(w, h, bbox.center(), spacing),
    };
    spec.map_err(|e| Failure::Usage(e.to_string()))
}

fn bessel_params(sample: &SampleArgs, spec: &GridSpec) -> BesselParams {
    let mut p = BesselParams::for_grid(spec);
    if let Some(dr) = sample.dr {
        p.dr = dr;
    }
    p.angles = sample.angles;
    p
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Outcome<()> {
    match out.filter(|p| p.as_os_str() != "-") {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut so = io::stdout().lock();
            so.write_all(bytes)
                .and_then(|_| so.flush())
                .map_err(|e| Failure::Input(format!("writing stdout: {e}")))
        }
    }
}

fn field_bytes(field: &TransformField, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => field_to_csv(field).into_bytes(),
        Format::Json => (field_to_json(field) + "\n").into_bytes(),
        Format::Pgm => encode_pgm(&field.spec, &field.values),
    }
}

fn random_scene(seed: u64, targets: usize) -> Outcome<SceneSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disks: Vec<DiskSpec> = Vec::with_capacity(targets);
    let mut tries = 0;
    while disks.len() < targets {
        tries += 1;
        if tries > 10_000 {
            return Err(Failure::Usage(format!("cannot place {targets} disjoint targets")));
        }
        let radius = rng.gen_range(0.1..0.3);
        let center = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if disks.iter().all(|d| d.center.dist(center) > d.radius + radius + 0.1) {
            disks.push(DiskSpec {
                center,
                radius,
                weight: 1,
                ngon: chitransform::io::DEFAULT_DISK_NGON,
            });
        }
    }
    Ok(SceneSpec {
        polygons: Vec::new(),
        disks,
    })
}

fn synth(a: SynthArgs) -> Outcome<()> {
    let scene = match (&a.input, a.seed) {
        (Some(p), _) => load_scene(p)?,
        (None, Some(seed)) => {
            let spec = random_scene(seed, a.targets)?;
            let scene = spec.build()?;
            if let Some(p) = &a.scene_out {
                write_out(Some(p), (scene_to_json(&scene) + "\n").as_bytes())?;
            }
            scene
        }
        (None, None) => return Err(Failure::Usage("synth needs a scene file or --seed".into())),
    };
    let spec = resolve_grid(&a.grid, scene.bbox(), None)?;
    let h = rasterize(&scene, &spec)?;
    let bytes = match a.out.format {
        Format::Csv => raster_to_csv(&h).into_bytes(),
        Format::Json => (raster_to_json(&h) + "\n").into_bytes(),
        Format::Pgm => {
            let v: Vec<f64> = h.values().iter().map(|&x| x as f64).collect();
            encode_pgm(h.spec(), &v)
        }
    };
    write_out(a.out.out.as_deref(), &bytes)
}

fn integrate(a: InputArgs) -> Outcome<()> {
    let h = match load(&a.input)? {
        Input::Raster(h) => h,
        Input::Scene(_) => {
            return Err(Failure::Input(format!(
                "{}: integrate expects a raster; run `synth` first",
                a.input.display()
            )))
        }
    };
    write_out(None, format!("{}\n", euler_integral(&h)).as_bytes())
}

fn bessel(a: FieldArgs) -> Outcome<()> {
    let norm = parse_norm(&a.norm)?;
    let field = match load(&a.input.input)? {
        Input::Scene(s) => {
            let spec = resolve_grid(&a.grid, s.bbox(), None)?;
            bessel_transform(&s, &norm, &spec, &bessel_params(&a.sample, &spec))?
        }
        Input::Raster(h) => {
            let spec = resolve_grid(&a.grid, h.support_bbox(), Some(h.spec()))?;
            bessel_transform_raster(&h, &norm, &spec, &bessel_params(&a.sample, &spec))?
        }
    };
    write_out(a.out.out.as_deref(), &field_bytes(&field, a.out.format))
}

fn fourier(a: FourierArgs) -> Outcome<()> {
    if a.format == Format::Pgm {
        return Err(Failure::Usage("fourier writes csv or json".into()));
    }
    let input = load(&a.input.input)?;
    let (support, default_dr) = match &input {
        Input::Scene(s) => (s.bbox(), None),
        Input::Raster(h) => (h.support_bbox(), Some(0.5 * h.spec().spacing)),
    };
    let dr = a
        .dr
        .or(default_dr)
        .unwrap_or_else(|| support.map_or(1.0, |b| b.diameter() / 1000.0));
    let degrees: Vec<f64> = if a.directions_deg.is_empty() {
        if a.count == 0 {
            return Err(Failure::Usage("--directions must be at least 1".into()));
        }
        (0..a.count).map(|k| 180.0 * k as f64 / a.count as f64).collect()
    } else {
        a.directions_deg.clone()
    };
    let mut rows = Vec::with_capacity(degrees.len());
    for &deg in &degrees {
        let dir = Direction::new(deg.to_radians());
        let v = match &input {
            Input::Scene(s) => fourier_transform(s, dir, dr)?,
            Input::Raster(h) => fourier_transform(h, dir, dr)?,
        };
        rows.push((deg, v));
    }
    let text = match a.format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(d, v)| serde_json::json!({ "direction_deg": d, "value": v }))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "dr": dr, "values": items })).expect("json") + "\n"
        }
        _ => {
            let mut s = String::from("direction_deg,value\n");
            for (d, v) in &rows {
                s.push_str(&format!("{d},{v}\n"));
            }
            s
        }
    };
    write_out(a.out.as_deref(), text.as_bytes())
}

fn sva(a: SvaArgs) -> Outcome<()> {
    let family = SvaFamily::rotated_linf(a.sva_rotations)?;
    let field = match load(&a.input.input)? {
        Input::Scene(s) => {
            let spec = resolve_grid(&a.grid, s.bbox(), None)?;
            sva_transform(&s, &family, &spec, &bessel_params(&a.sample, &spec))?
        }
        Input::Raster(h) => {
            let spec = resolve_grid(&a.grid, h.support_bbox(), Some(h.spec()))?;
            sva_transform(&h, &family, &spec, &bessel_params(&a.sample, &spec))?
        }
    };
    if let Some(p) = &a.image {
        write_out(Some(p), &encode_pgm(&field.spec, &field.values))?;
    }
    write_out(a.out.out.as_deref(), &field_bytes(&field, a.out.format))
}

fn parse_points_file(path: &Path) -> Outcome<Vec<Point>> {
    let text = read_text(path)?;
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('x') {
            continue;
        }
        let nums: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Failure::Input(format!("{}: line {}: expected `x,y`", path.display(), i + 1)))?;
        if nums.len() != 2 {
            return Err(Failure::Input(format!("{}: line {}: expected `x,y`", path.display(), i + 1)));
        }
        pts.push(Point::new(nums[0], nums[1]));
    }
    Ok(pts)
}

fn index(a: IndexArgs) -> Outcome<()> {
    let norm = parse_norm(&a.norm)?;
    if !norm.is_euclidean() {
        return Err(Failure::Usage(format!(
            "index has a closed form for l2 only, got `{}`; use `bessel` instead",
            a.norm
        )));
    }
    if a.format == Format::Pgm {
        return Err(Failure::Usage("index writes csv or json".into()));
    }
    let scene = load_scene(&a.input)?;
    let mut pts: Vec<Point> = a.point.chunks(2).map(|c| Point::new(c[0], c[1])).collect();
    if let Some(p) = &a.points {
        pts.extend(parse_points_file(p)?);
    }
    if pts.is_empty() {
        return Err(Failure::Usage("give at least one --point or a --points file".into()));
    }
    let values: Vec<f64> = pts.iter().map(|&p| bessel_index(&scene, p)).collect();
    let text = match a.format {
        Format::Json => {
            let items: Vec<serde_json::Value> = pts
                .iter()
                .zip(&values)
                .map(|(p, v)| serde_json::json!({ "x": p.x, "y": p.y, "value": v }))
                .collect();
            serde_json::to_string_pretty(&items).expect("json") + "\n"
        }
        _ => {
            let mut s = String::from("x,y,value\n");
            for (p, v) in pts.iter().zip(&values) {
                s.push_str(&format!("{},{},{v}\n", p.x, p.y));
            }
            s
        }
    };
    write_out(a.out.as_deref(), text.as_bytes())
}

fn localize_cmd(a: LocalizeArgs) -> Outcome<()> {
    let norm = parse_norm(&a.norm)?;
    let input = load(&a.input.input)?;
    let (report, field) = match &input {
        Input::Scene(s) => {
            let spec = resolve_grid(&a.grid, s.bbox(), None)?;
            let params = LocalizeParams {
                grid: spec,
                bessel: bessel_params(&a.sample, &spec),
                prominence: a.prominence,
            };
            localize(s, &norm, &params)?
        }
        Input::Raster(h) => {
            let spec = resolve_grid(&a.grid, h.support_bbox(), Some(h.spec()))?;
            let params = LocalizeParams {
                grid: spec,
                bessel: bessel_params(&a.sample, &spec),
                prominence: a.prominence,
            };
            localize_raster(h, &norm, &params)?
        }
    };
    check_minima(&field, report.minima.iter().map(|m| m.cell))?;
    if let Some(p) = &a.field {
        write_out(Some(p), &field_bytes(&field, a.format))?;
    }
    write_out(a.out.as_deref(), (report_to_json(&report) + "\n").as_bytes())
}

/// Every reported cell must be a local minimum of the written field.
fn check_minima(field: &TransformField, cells: impl Iterator<Item = [usize; 2]>) -> Outcome<()> {
    let (w, h) = (field.spec.width as isize, field.spec.height as isize);
    for [c, r] in cells {
        let v = field.get(c, r);
        for dc in -1..=1isize {
            for dr in -1..=1isize {
                let (nc, nr) = (c as isize + dc, r as isize + dr);
                if nc >= 0 && nr >= 0 && nc < w && nr < h && field.get(nc as usize, nr as usize) < v {
                    return Err(Failure::Invariant(format!("reported minimum at cell ({c}, {r}) has a lower neighbor")));
                }
            }
        }
    }
    Ok(())
}

fn discriminate_cmd(a: DiscriminateArgs) -> Outcome<()> {
    let scene = load_scene(&a.input)?;
    let names = if a.norms.is_empty() {
        vec!["l2".to_string(), "linf".to_string()]
    } else {
        a.norms.clone()
    };
    let norms = names.iter().map(|n| parse_norm(n)).collect::<Outcome<Vec<_>>>()?;
    let family = a.sva_rotations.map(SvaFamily::rotated_linf).transpose()?;
    let spec = resolve_grid(&a.grid, scene.bbox(), None)?;
    let params = LocalizeParams {
        grid: spec,
        bessel: bessel_params(&a.sample, &spec),
        prominence: a.prominence,
    };
    let (report, fields) = discriminate(&scene, &norms, family.as_ref(), &params)?;
    for (nm, f) in report.per_norm.iter().zip(&fields) {
        check_minima(f, nm.minima.iter().map(|m| m.cell))?;
    }
    write_out(a.out.as_deref(), (report_to_json(&report) + "\n").as_bytes())
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Synth(a) => synth(a),
        Command::Integrate(a) => integrate(a),
        Command::Bessel(a) => bessel(a),
        Command::Fourier(a) => fourier(a),
        Command::Sva(a) => sva(a),
        Command::Index(a) => index(a),
        Command::Localize(a) => localize_cmd(a),
        Command::Discriminate(a) => discriminate_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(_) => {
            eprintln!("error: internal invariant violated");
            ExitCode::from(3)
        }
    }
}

