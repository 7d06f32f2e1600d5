//! Ray file format: one ray per line, coordinates separated by commas, each
//! coordinate `p/q` or `p/q+r/s r2`; `#` starts a comment.

use super::Ray;
use crate::error::{Error, Result};

pub fn parse_rays(text: &str) -> Result<Vec<Ray>> {
    let mut rays: Vec<Ray> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split(',').collect();
        let at_line = |e: Error| match e {
            Error::Parse { message, .. } => Error::parse(line_no, message),
            other => Error::parse(line_no, other.to_string()),
        };
        let ray = Ray::parse_coords(&tokens).map_err(at_line)?;
        if let Some(first) = rays.first() {
            if first.dim() != ray.dim() {
                return Err(Error::parse(
                    line_no,
                    format!("ray has {} coordinates, expected {}", ray.dim(), first.dim()),
                ));
            }
        }
        rays.push(ray);
    }
    Ok(rays)
}

pub fn rays_to_text<'a>(rays: impl IntoIterator<Item = &'a Ray>) -> String {
    let mut out = String::new();
    for r in rays {
        let coords: Vec<String> = r.coords().iter().map(|c| c.to_file_token()).collect();
        out.push_str(&coords.join(", "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rays::peres_rays;

    #[test]
    fn parses_comments_and_forms() {
        let rays = parse_rays("# generators\n1, 0, 0\n\n1,1,0 # b\n0+1 r2, 1, 1\n").unwrap();
        assert_eq!(rays.len(), 3);
        assert_eq!(rays[2].label(), "(r2 1 1)");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_rays("1,0,0\n1,x,0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_rays("1,0,0\n0,0,0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_rays("1,0,0\n1,0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn round_trip() {
        let rays: Vec<Ray> = peres_rays().into_iter().collect();
        assert_eq!(parse_rays(&rays_to_text(&rays)).unwrap(), rays);
    }
}
