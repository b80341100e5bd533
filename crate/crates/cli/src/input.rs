use lagstab::scalar::{is_decimal_literal, parse_rational};
use lagstab::{Error, OrbitSpec, Rational, Result, Scalar, Track};

/// A scalar that can be read from a command-line token.
pub trait ParseScalar: Scalar {
    fn parse_token(token: &str) -> Result<Self>;
}

impl ParseScalar for Rational {
    fn parse_token(token: &str) -> Result<Self> {
        parse_rational(token)
    }
}

impl ParseScalar for f64 {
    fn parse_token(token: &str) -> Result<Self> {
        if is_decimal_literal(token) {
            token.trim().parse::<f64>().map_err(|e| Error::Parse { token: token.into(), reason: e.to_string() })
        } else {
            Ok(parse_rational(token)?.to_f64())
        }
    }
}

pub fn split_list(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).collect()
}

pub fn parse_list<S: ParseScalar>(list: &str) -> Result<Vec<S>> {
    split_list(list).into_iter().map(S::parse_token).collect()
}

pub fn parse_mode(list: &str) -> Result<Vec<i64>> {
    split_list(list)
        .into_iter()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse { token: tok.into(), reason: "expected an integer".into() })
        })
        .collect()
}

/// Orbit given by `--radii` or by `--simplex` with `--t`.
#[derive(Clone, Debug, Default)]
pub struct OrbitArgs {
    pub radii: Option<String>,
    pub simplex: Option<String>,
    pub t: Option<String>,
}

impl OrbitArgs {
    fn tokens(&self) -> Vec<&str> {
        [&self.radii, &self.simplex, &self.t].into_iter().flatten().flat_map(|s| split_list(s)).collect()
    }

    /// Exact unless some value is written as a decimal literal.
    pub fn default_track(&self) -> Track {
        if self.tokens().iter().any(|t| is_decimal_literal(t)) {
            Track::Float
        } else {
            Track::Exact
        }
    }

    pub fn build<S: ParseScalar>(&self) -> std::result::Result<OrbitSpec<S>, InputError> {
        match (&self.radii, &self.simplex, &self.t) {
            (Some(r), None, None) => {
                let radii = parse_list::<S>(r)?;
                Ok(OrbitSpec::from_radii(radii.len(), &radii)?)
            }
            (None, Some(s), Some(t)) => {
                let simplex = parse_list::<S>(s)?;
                Ok(OrbitSpec::from_simplex(simplex.len(), S::parse_token(t)?, &simplex)?)
            }
            (None, Some(_), None) => Err(InputError::Usage("--simplex needs --t".into())),
            (None, None, Some(_)) => Err(InputError::Usage("--t needs --simplex".into())),
            (Some(_), _, _) => {
                Err(InputError::Usage("--radii fixes the orbit; do not combine it with --simplex or --t".into()))
            }
            (None, None, None) => Err(InputError::Usage("give --radii, or --simplex with --t".into())),
        }
    }
}

#[derive(Debug)]
pub enum InputError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Domain(e)
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Usage(s) => f.write_str(s),
            InputError::Domain(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(radii: Option<&str>, simplex: Option<&str>, t: Option<&str>) -> OrbitArgs {
        OrbitArgs { radii: radii.map(Into::into), simplex: simplex.map(Into::into), t: t.map(Into::into) }
    }

    #[test]
    fn track_follows_literals() {
        assert_eq!(args(None, Some("1/3,1/3,1/3"), Some("1/2")).default_track(), Track::Exact);
        assert_eq!(args(Some("1,2"), None, None).default_track(), Track::Exact);
        assert_eq!(args(Some("1.0,2"), None, None).default_track(), Track::Float);
    }

    #[test]
    fn conflicting_arguments() {
        assert!(matches!(args(Some("1,1"), Some("1/2,1/2"), None).build::<f64>(), Err(InputError::Usage(_))));
        assert!(matches!(args(None, Some("1/2,1/2"), None).build::<f64>(), Err(InputError::Usage(_))));
        assert!(matches!(
            args(Some("1,x"), None, None).build::<Rational>(),
            Err(InputError::Domain(Error::Parse { .. }))
        ));
    }

    #[test]
    fn decimals_parse_exactly_on_the_exact_track() {
        let o = args(None, Some("0.25,0.75"), Some("0.5")).build::<Rational>().unwrap();
        assert_eq!(o.simplex()[0], parse_rational("1/4").unwrap());
    }
}
