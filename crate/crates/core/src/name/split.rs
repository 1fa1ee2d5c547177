//! Identifier splitting.

/// Splits an identifier on underscores, camelCase boundaries and
/// letter-digit boundaries. Consecutive capitals stay together until a
/// lowercase letter follows (`SSLProtocol` -> `SSL`, `Protocol`). A leading
/// `test`/`Test` token survives as its own word.
pub fn split_identifier(name: &str) -> Vec<String> {
    let mut words: Vec<String> = Vec::new();
    let mut current = String::new();
    let chars: Vec<char> = name.chars().collect();

    let flush = |current: &mut String, words: &mut Vec<String>| {
        if !current.is_empty() {
            words.push(std::mem::take(current));
        }
    };

    for i in 0..chars.len() {
        let c = chars[i];
        if c == '_' || c == '$' {
            flush(&mut current, &mut words);
            continue;
        }
        if !current.is_empty() {
            let prev = current.chars().last().expect("non-empty");
            let boundary = (prev.is_lowercase() && c.is_uppercase())
                || (prev.is_alphabetic() && c.is_ascii_digit())
                || (prev.is_ascii_digit() && c.is_alphabetic())
                // end of an acronym run: ABc splits as A|Bc
                || (prev.is_uppercase()
                    && c.is_uppercase()
                    && chars.get(i + 1).is_some_and(|n| n.is_lowercase()));
            if boundary {
                flush(&mut current, &mut words);
            }
        }
        current.push(c);
    }
    flush(&mut current, &mut words);
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(s: &str) -> Vec<String> {
        split_identifier(s)
    }

    #[test]
    fn splits_on_underscores_and_camel_case() {
        assert_eq!(split("testExecute_Action"), vec!["test", "Execute", "Action"]);
    }

    #[test]
    fn single_letter_identifier() {
        assert_eq!(split("x"), vec!["x"]);
    }

    #[test]
    fn acronym_runs_stay_together_until_lowercase_follows() {
        assert_eq!(
            split("testGetSSLProtocol"),
            vec!["test", "Get", "SSL", "Protocol"]
        );
        assert_eq!(split("SSLProtocol"), vec!["SSL", "Protocol"]);
        assert_eq!(split("parseHTTP"), vec!["parse", "HTTP"]);
    }

    #[test]
    fn splits_at_letter_digit_boundaries() {
        assert_eq!(split("returnFoo2"), vec!["return", "Foo", "2"]);
        assert_eq!(split("test2Cases"), vec!["test", "2", "Cases"]);
    }

    #[test]
    fn concatenation_reproduces_original_minus_separators() {
        for name in ["testExecute_Action", "testGetSSLProtocol", "returnFoo2", "a_b_c9", "X"] {
            let joined: String = split(name).concat();
            let stripped: String = name.chars().filter(|c| *c != '_' && *c != '$').collect();
            assert_eq!(joined, stripped);
        }
    }
}
