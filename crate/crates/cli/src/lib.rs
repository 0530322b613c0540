//! Command-line front end for `tdual-core`: argument parsing, input loading,
//! report assembly and rendering.

pub mod args;
pub mod input;
pub mod render;
pub mod run;

pub use args::{
    parse_args, Format, GroupSpec, ParseOutcome, RunConfig, TwistSpec, UsageError, Verb,
};
pub use run::{run, RunOutput, SCHEMA};

/// Exit code for usage errors.
pub const EXIT_USAGE: i32 = 2;

/// Parses, runs and renders. Returns the exit code and the text for stdout and stderr.
pub fn main_with_args<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(ParseOutcome::Display(s)) => return (0, s, String::new()),
        Err(ParseOutcome::Usage(e)) => {
            return (EXIT_USAGE, String::new(), format!("usage error: {e}\n"))
        }
    };
    let out = match run(&config) {
        Ok(o) => o,
        Err(e) => return (EXIT_USAGE, String::new(), format!("usage error: {e}\n")),
    };
    let text = match config.format {
        Format::Json => render::json(&out.report),
        Format::Text => render::text(&out.report),
    };
    match &config.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (out.exit_code, String::new(), String::new()),
            Err(e) => (
                EXIT_USAGE,
                String::new(),
                format!("cannot write {}: {e}\n", path.display()),
            ),
        },
        None => (out.exit_code, text, String::new()),
    }
}
