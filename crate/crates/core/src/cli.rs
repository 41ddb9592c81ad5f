//! Command-line front end. Exit status: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::document::parse_scenario;
use crate::kinematics::{
    classify, interval_in_frame, interval_rest, parse_real, FrameTransform, FrameVelocity,
    SpacetimeEvent,
};
use crate::narrative::{narrative_report, photon_count_at};
use crate::render::{render_axes, render_scenario, Bounds, DiagramSpec};
use crate::scenario::{builtin, fixed, simulate, EventGraph, Scenario};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "superluminal", about = "Generalized Lorentz frames for photon/atom/mirror processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map an event (t, x) into the frame with velocity V.
    Transform {
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        v: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = point)]
        event: (f64, f64),
    },
    /// Interval between two events, optionally also evaluated in frame V.
    Interval {
        #[arg(long, allow_hyphen_values = true, value_parser = point)]
        e1: (f64, f64),
        #[arg(long, allow_hyphen_values = true, value_parser = point)]
        e2: (f64, f64),
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        v: Option<f64>,
    },
    /// Simulate a scenario in the rest frame and print its event graph.
    Simulate(Source),
    /// Frame-ordered events with emission/absorption roles.
    Narrative {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        v: f64,
    },
    /// Number of photons in flight at frame time --time.
    Slice {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        v: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        time: f64,
    },
    /// Spacetime diagram of a scenario as SVG.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true, value_parser = real, default_value = "0")]
        v: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rest and frame axes with the light ray, as SVG.
    Axes {
        #[arg(long, allow_hyphen_values = true, value_parser = real)]
        v: f64,
        /// Half-width of the square drawing region.
        #[arg(long, value_parser = real, default_value = "2")]
        extent: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// Scenario file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    scenario: Option<PathBuf>,
    /// Use a canonical scenario instead of a file.
    #[arg(long, value_parser = ["fig2", "fig3", "fig4"])]
    builtin: Option<String>,
}

fn real(text: &str) -> Result<f64, String> {
    parse_real(text).map_err(|e| e.to_string())
}

fn point(text: &str) -> Result<(f64, f64), String> {
    let (t, x) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `t,x`, got `{text}`"))?;
    Ok((real(t)?, real(x)?))
}

impl Source {
    fn load(&self) -> Result<Scenario, Error> {
        if let Some(name) = &self.builtin {
            return Ok(builtin(name).expect("clap restricts builtin names"));
        }
        let path = self.scenario.as_ref().expect("clap requires a scenario");
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(parse_scenario(&text)?)
    }

    fn graph(&self) -> Result<EventGraph, Error> {
        Ok(simulate(&self.load()?)?)
    }
}

fn emit(out: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match command {
        Command::Transform { v, event } => {
            let l = FrameTransform::from_velocity(v)?;
            let (t, x) = l.apply_coords(event.0, event.1);
            writeln!(stdout, "{:.6} {:.6}", fixed(t), fixed(x)).map_err(io)?;
        }
        Command::Interval { e1, e2, v } => {
            let a = SpacetimeEvent::point(e1.0, e1.1);
            let b = SpacetimeEvent::point(e2.0, e2.1);
            writeln!(stdout, "ds2_rest\t{:.6}", fixed(interval_rest(&a, &b))).map_err(io)?;
            writeln!(stdout, "class\t{}", classify(&a, &b)).map_err(io)?;
            if let Some(v) = v {
                let l = FrameTransform::from_velocity(v)?;
                let (dt, dx) = l.apply_coords(b.t - a.t, b.x - a.x);
                writeln!(stdout, "regime\t{}", l.regime()).map_err(io)?;
                writeln!(stdout, "delta_frame\t{:.6}\t{:.6}", fixed(dt), fixed(dx)).map_err(io)?;
                writeln!(stdout, "ds2_frame\t{:.6}", fixed(interval_in_frame(dt, dx, l.regime())))
                    .map_err(io)?;
            }
        }
        Command::Simulate(source) => {
            let graph = source.graph()?;
            stdout
                .write_all(graph.to_canonical_string().as_bytes())
                .map_err(io)?;
        }
        Command::Narrative { source, v } => {
            let graph = source.graph()?;
            let report = narrative_report(&graph, FrameVelocity::new(v)?)?;
            stdout.write_all(report.to_tsv().as_bytes()).map_err(io)?;
        }
        Command::Slice { source, v, time } => {
            let graph = source.graph()?;
            let n = photon_count_at(&graph, FrameVelocity::new(v)?, time)?;
            writeln!(stdout, "{n}").map_err(io)?;
        }
        Command::Render { source, v, out } => {
            let graph = source.graph()?;
            let svg = render_scenario(&graph, &DiagramSpec::new(FrameVelocity::new(v)?));
            emit(out.as_ref(), &svg, stdout)?;
        }
        Command::Axes { v, extent, out } => {
            if !(extent > 0.0) {
                return Err(Error::Io(format!("extent must be positive, got {extent}")));
            }
            let svg = render_axes(FrameVelocity::new(v)?, Bounds::square(extent));
            emit(out.as_ref(), &svg, stdout)?;
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let rendered = err.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            1
        }
    }
}
