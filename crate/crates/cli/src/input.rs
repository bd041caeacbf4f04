use std::path::Path;

use defring::{Ctx, Ideal, MonomialOrder, Poly, Scalar, VarContext};

use crate::commands::CliError;

/// Generator texts from a file (one per line, `#` starts a comment) or from
/// a comma-separated inline list.
pub fn generator_texts(spec: &str) -> Result<Vec<String>, CliError> {
    let path = Path::new(spec);
    let raw: Vec<String> = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{spec}: {e}")))?;
        text.lines()
            .map(|line| line.split('#').next().unwrap_or("").trim().to_string())
            .collect()
    } else {
        spec.split(',').map(|s| s.trim().to_string()).collect()
    };
    Ok(raw.into_iter().filter(|s| !s.is_empty()).collect())
}

pub fn context(vars: &str, order: &str) -> Result<Ctx, CliError> {
    let order: MonomialOrder = order.parse()?;
    Ok(VarContext::parse(vars, order)?)
}

pub fn ideal<C: Scalar>(ctx: &Ctx, spec: &str) -> Result<Ideal<C>, CliError> {
    let texts = generator_texts(spec)?;
    Ok(Ideal::parse(ctx, &texts)?)
}

pub fn poly<C: Scalar>(ctx: &Ctx, text: &str) -> Result<Poly<C>, CliError> {
    Ok(Poly::parse(text, ctx)?)
}
