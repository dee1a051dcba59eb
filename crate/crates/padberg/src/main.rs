use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padberg::exchange::{export_csv, load_project, save_project, ExchangeError, ProjectConfig, ProjectFile};
use padberg::render::{render_score, Instrument, RenderConfig, RenderError, SampleLibrary};
use padberg::service::{serve, ServiceOptions};
use padberg::wav::{write_wav, WavError};
use padberg_core::tonal24::{
    build_chord, build_circle, build_scale, interval_class, keyboard_to_frequency, translate_degree,
};
use padberg_core::{compose, ComposeConfig, Mode, PitchClass24, Score};

const EXIT_INPUT: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Text-to-music composer: canons and free fugues on a 24-step scale.
#[derive(Parser)]
#[command(name = "padberg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose from text, print the processing log, optionally write files.
    Compose(ComposeArgs),
    /// Re-render a saved project.
    Render(RenderArgs),
    /// Query the 24 pitch-class tonal system.
    #[command(subcommand)]
    Tonal(TonalCommand),
    /// Run the local HTTP service.
    Serve(ServeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Canon,
    Fugue,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Canon => Mode::Canon,
            ModeArg::Fugue => Mode::Fugue,
        }
    }
}

#[derive(Args)]
struct RenderOpts {
    /// `sine` or the name of a clip in the samples directory.
    #[arg(long, default_value = "sine")]
    instrument: String,
    #[arg(long, default_value_t = 0.125)]
    tick_seconds: f64,
    #[arg(long, default_value_t = 44_100)]
    sample_rate: u32,
    #[arg(long, default_value_t = 0.8)]
    gain: f64,
    /// Directory of `<name>.wav` clips.
    #[arg(long, env = "PADBERG_SAMPLES")]
    samples: Option<PathBuf>,
}

impl RenderOpts {
    fn config(&self) -> RenderConfig {
        RenderConfig {
            instrument: self.instrument.parse::<Instrument>().unwrap(),
            tick_seconds: self.tick_seconds,
            sample_rate: self.sample_rate,
            gain: self.gain,
            ..RenderConfig::default()
        }
    }

    fn library(&self) -> SampleLibrary {
        self.samples.clone().map(SampleLibrary::new).unwrap_or_default()
    }
}

#[derive(Args)]
struct ComposeArgs {
    text: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    voices: u8,
    #[arg(long, value_enum, default_value = "canon")]
    mode: ModeArg,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    repeats: u32,
    /// Write the piano roll as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Include every voice in the CSV instead of only the melody.
    #[arg(long)]
    all_voices: bool,
    #[arg(long)]
    wav: Option<PathBuf>,
    /// Save a project file.
    #[arg(long)]
    project: Option<PathBuf>,
    #[command(flatten)]
    render: RenderOpts,
}

#[derive(Args)]
struct RenderArgs {
    project: PathBuf,
    #[arg(long)]
    wav: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    all_voices: bool,
    #[arg(long, env = "PADBERG_SAMPLES")]
    samples: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TonalCommand {
    /// The 13-note scale on a tonic.
    Scale {
        #[arg(long, default_value = "B")]
        tonic: char,
    },
    /// The 5-note chord on a scale degree.
    Chord {
        #[arg(long, default_value = "B")]
        tonic: char,
        #[arg(long)]
        degree: u32,
    },
    /// The ordering generated by repeatedly adding a step.
    Circle {
        #[arg(long)]
        generator: u32,
        #[arg(long, default_value_t = 24)]
        modulus: u32,
    },
    /// Map a diatonic degree (1-7) to the 13-note scale.
    Translate { degree: u32 },
    /// Interval class between two pitch classes.
    Interval { from: char, to: char },
    /// Frequency of a virtual keyboard key (key 0 = A 440 Hz).
    Key { key: u32 },
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// UI files to serve; sample clips are read from its `audio/` subdirectory.
    #[arg(long, env = "PADBERG_ASSETS")]
    assets: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
    Usage(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Input(m) => (EXIT_INPUT, m),
            Failure::Io(m) => (EXIT_IO, m),
            Failure::Usage(m) => (EXIT_USAGE, format!("usage error: {m}")),
        };
        eprintln!("padberg: {msg}");
        ExitCode::from(code)
    }
}

impl From<padberg_core::Error> for Failure {
    fn from(e: padberg_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<RenderError> for Failure {
    fn from(e: RenderError) -> Self {
        match e {
            RenderError::Wav(WavError::Io(io)) => Failure::Io(io.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<WavError> for Failure {
    fn from(e: WavError) -> Self {
        RenderError::Wav(e).into()
    }
}

impl From<ExchangeError> for Failure {
    fn from(e: ExchangeError) -> Self {
        match e {
            ExchangeError::Io(io) => Failure::Io(io.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Compose(args) => cmd_compose(args),
        Command::Render(args) => cmd_render(args),
        Command::Tonal(cmd) => cmd_tonal(cmd),
        Command::Serve(args) => cmd_serve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}

fn print_summary(score: &Score, tick_seconds: f64) {
    println!(
        "score: {} voice(s), {}, {} repeat(s), measure {} ticks, {} events, {} ticks ({:.3} s)",
        score.voices,
        score.mode.as_str(),
        score.repeats,
        score.measure_ticks,
        score.events.len(),
        score.end_tick(),
        score.end_tick() as f64 * tick_seconds,
    );
}

fn write_outputs(
    score: &Score,
    render: &RenderConfig,
    samples: &SampleLibrary,
    csv: Option<PathBuf>,
    all_voices: bool,
    wav: Option<PathBuf>,
) -> Result<(), Failure> {
    if let Some(path) = csv {
        export_csv(score, !all_voices, &path)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = wav {
        let buf = render_score(score, render, samples)?;
        write_wav(&buf, &path)?;
        println!("wrote {} ({:.3} s)", path.display(), buf.duration_seconds());
    }
    Ok(())
}

fn cmd_compose(args: ComposeArgs) -> Result<(), Failure> {
    let config = ComposeConfig { voices: args.voices, mode: args.mode.into(), repeats: args.repeats };
    let render = args.render.config();
    render.validate()?;
    let composition = compose(&args.text, &config)?;
    for line in composition.log.iter() {
        println!("{line}");
    }
    print_summary(&composition.score, render.tick_seconds);

    write_outputs(&composition.score, &render, &args.render.library(), args.csv, args.all_voices, args.wav)?;
    if let Some(path) = args.project {
        let project = ProjectFile {
            schema_version: padberg::exchange::SCHEMA_VERSION,
            text: args.text.clone(),
            config: ProjectConfig { voices: config.voices, mode: config.mode, repeats: config.repeats, render },
            score: composition.score,
        };
        save_project(&project, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_render(args: RenderArgs) -> Result<(), Failure> {
    let project = load_project(&args.project)?;
    if project.rederive()? != project.score {
        return Err(Failure::Input(format!(
            "{}: stored score does not match its text and config",
            args.project.display()
        )));
    }
    print_summary(&project.score, project.config.render.tick_seconds);
    let samples = args.samples.map(SampleLibrary::new).unwrap_or_default();
    write_outputs(&project.score, &project.config.render, &samples, args.csv, args.all_voices, args.wav)
}

fn pitch(name: char) -> Result<PitchClass24, Failure> {
    PitchClass24::from_name(name).map_err(|e| Failure::Usage(e.to_string()))
}

fn names(members: &[PitchClass24]) -> String {
    members.iter().map(|p| p.name().to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_tonal(cmd: TonalCommand) -> Result<(), Failure> {
    let usage = |e: padberg_core::Error| Failure::Usage(e.to_string());
    match cmd {
        TonalCommand::Scale { tonic } => println!("{}", names(&build_scale(pitch(tonic)?).members)),
        TonalCommand::Chord { tonic, degree } => {
            let chord = build_chord(&build_scale(pitch(tonic)?), degree).map_err(usage)?;
            println!("{}", names(&chord.members));
        }
        TonalCommand::Circle { generator, modulus } => {
            let circle = build_circle(generator, modulus).map_err(usage)?;
            let order: Vec<String> = circle.ordering.iter().map(u32::to_string).collect();
            println!("{}", order.join(" "));
        }
        TonalCommand::Translate { degree } => println!("{}", translate_degree(degree).map_err(usage)?),
        TonalCommand::Interval { from, to } => println!("{}", interval_class(pitch(from)?, pitch(to)?)),
        TonalCommand::Key { key } => println!("{:.4}", keyboard_to_frequency(key)),
    }
    Ok(())
}

fn cmd_serve(args: ServeArgs) -> Result<(), Failure> {
    let addr = SocketAddr::new(args.host, args.port);
    let options = ServiceOptions { assets_dir: args.assets, ..Default::default() };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    eprintln!("padberg: listening on http://{addr}");
    runtime
        .block_on(async move {
            tokio::select! {
                r = serve(addr, options) => r,
                _ = tokio::signal::ctrl_c() => Ok(()),
            }
        })
        .map_err(|e| Failure::Io(e.to_string()))
}
