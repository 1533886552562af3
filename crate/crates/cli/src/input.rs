use std::fmt;
use std::fs;

use locres::poly::{parse_poly_list, parse_poly_with, VarNames};
use locres::{Error, Poly};
use serde_json::{json, Value};

use crate::args::IdealArgs;

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct InputError {
    pub message: String,
    pub location: Option<Box<Location>>,
    /// The library error this was built from, if any.
    pub cause: Option<Error>,
}

/// Where a syntax error occurred, with the offending line for display.
#[derive(Debug)]
pub struct Location {
    pub origin: String,
    pub line: usize,
    pub column: usize,
    pub text: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        Self { message: message.into(), location: None, cause: None }
    }

    pub fn to_json(&self) -> Value {
        let loc = self.location.as_ref().map(|l| json!({"origin": l.origin, "line": l.line, "column": l.column}));
        json!({"error": {"message": self.message, "location": loc}})
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self { message: e.to_string(), location: None, cause: Some(e) }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}", self.message)?;
        if let Some(l) = &self.location {
            let gutter = " ".repeat(l.line.to_string().len());
            write!(f, "\n{gutter}--> {}:{}:{}", l.origin, l.line, l.column)?;
            write!(f, "\n{} | {}", l.line, l.text)?;
            write!(f, "\n{gutter} | {}^", " ".repeat(l.column.saturating_sub(1)))?;
        }
        Ok(())
    }
}

/// Attaches a location to a parse error of `text`, whose first line is
/// line `first_line` of `origin`.
fn located(e: Error, origin: &str, text: &str, first_line: usize) -> InputError {
    match e {
        Error::Parse { line, column, message, .. } => InputError {
            message: format!("syntax error: {message}"),
            location: Some(Box::new(Location {
                origin: origin.to_string(),
                line: first_line + line - 1,
                column,
                text: text.lines().nth(line - 1).unwrap_or("").to_string(),
            })),
            cause: None,
        },
        other => other.into(),
    }
}

/// Variable names and generators of the ideal under study.
pub struct Problem {
    pub names: VarNames,
    pub generators: Vec<Poly>,
    pub sources: Vec<String>,
}

impl Problem {
    pub fn load(args: &IdealArgs) -> Result<Self, InputError> {
        let cli_names = args.vars.as_deref().map(VarNames::parse_list).transpose()?;
        let (names, generators) = match (&args.ideal, &args.ideal_file) {
            (Some(text), None) => {
                let names = cli_names.ok_or_else(|| InputError::new("--vars is required with --ideal"))?;
                let gens = parse_poly_list(text, &names).map_err(|e| located(e, "--ideal", text, 1))?;
                (names, gens)
            }
            (None, Some(path)) => {
                let origin = path.display().to_string();
                let text = fs::read_to_string(path).map_err(|e| InputError::new(format!("cannot read {origin}: {e}")))?;
                parse_ideal_file(&text, &origin, cli_names)?
            }
            _ => return Err(InputError::new("exactly one of --ideal and --ideal-file is required")),
        };
        if names.is_empty() {
            return Err(InputError::new("no variables given"));
        }
        if generators.iter().all(|g| g.is_zero()) {
            return Err(InputError::new("the ideal has no nonzero generators"));
        }
        let sources = generators.iter().map(|g| locres::poly::render(g, &names)).collect();
        Ok(Self { names, generators, sources })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn parse_germ(&self, text: &str) -> Result<Poly, InputError> {
        parse_poly_with(text, &self.names).map_err(|e| located(e, "--germ", text, 1))
    }

    pub fn render(&self, p: &Poly) -> String {
        locres::poly::render(p, &self.names)
    }

    /// Rewrites library errors that refer to variables by index.
    pub fn describe(&self, mut e: InputError) -> InputError {
        let name = |v: usize| self.names.names().get(v).cloned().unwrap_or_else(|| format!("#{v}"));
        match e.cause {
            Some(Error::NotZeroDimensional { var }) => {
                e.message = format!("ideal is not zero-dimensional: no power of {} lies in the leading-term ideal", name(var));
            }
            Some(Error::NotPrimary { var, power }) => {
                e.message = format!("ideal is not primary to the origin: {}^{power} is not a member", name(var));
            }
            _ => {}
        }
        e
    }

    pub fn header_json(&self) -> Value {
        json!({"vars": self.names.names(), "ideal": self.sources})
    }
}

/// Generators separated by commas or newlines; `#` starts a comment and a
/// `# vars: a, b` comment names the variables unless `--vars` is given.
pub fn parse_ideal_file(text: &str, origin: &str, cli_names: Option<VarNames>) -> Result<(VarNames, Vec<Poly>), InputError> {
    let mut header = None;
    for line in text.lines() {
        if let Some(rest) = line.trim_start().strip_prefix('#') {
            if let Some(list) = rest.trim_start().strip_prefix("vars:") {
                header = Some(VarNames::parse_list(list)?);
                break;
            }
        }
    }
    let names = cli_names.or(header).ok_or_else(|| InputError::new(format!("{origin}: no `# vars:` header and no --vars given")))?;
    let mut gens = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim_end().trim_end_matches(',');
        if body.trim().is_empty() {
            continue;
        }
        gens.extend(parse_poly_list(body, &names).map_err(|e| located(e, origin, line, k + 1))?);
    }
    if gens.is_empty() {
        return Err(InputError::new(format!("{origin}: no generators")));
    }
    Ok((names, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_with_header_and_comments() {
        let text = "# vars: z, w\n# a comment\nz^2, z*w,\nw^2  # trailing\n";
        let (names, gens) = parse_ideal_file(text, "t", None).unwrap();
        assert_eq!(names.names(), ["z", "w"]);
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn syntax_error_reports_file_line() {
        let text = "# vars: z, w\nz^2\nw^ + 1\n";
        let err = parse_ideal_file(text, "t", None).unwrap_err();
        let loc = err.location.unwrap();
        assert_eq!((loc.line, loc.column), (3, 4));
        assert_eq!(loc.text, "w^ + 1");
    }

    #[test]
    fn missing_names() {
        assert!(parse_ideal_file("z^2", "t", None).is_err());
    }
}
