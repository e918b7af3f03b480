/// Stand-in token for a transition arrow between idea stages.
pub const ARROW_TOKEN: &str = "<ARROW>";

/// Lowercases and splits `text` into alphanumeric runs.
///
/// `→` and ASCII arrows (`->`, `-->`) become the standalone [`ARROW_TOKEN`];
/// all other punctuation separates tokens and is dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let flush = |current: &mut String, tokens: &mut Vec<String>| {
        if !current.is_empty() {
            tokens.push(std::mem::take(current));
        }
    };
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '→' {
            flush(&mut current, &mut tokens);
            tokens.push(ARROW_TOKEN.to_string());
            i += 1;
            continue;
        }
        if c == '-' {
            let dashes = chars[i..].iter().take_while(|&&d| d == '-').count();
            if chars.get(i + dashes) == Some(&'>') {
                flush(&mut current, &mut tokens);
                tokens.push(ARROW_TOKEN.to_string());
                i += dashes + 1;
                continue;
            }
        }
        if c.is_alphanumeric() {
            current.extend(c.to_lowercase());
        } else {
            flush(&mut current, &mut tokens);
        }
        i += 1;
    }
    flush(&mut current, &mut tokens);
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s)
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            toks("Abacus → mechanical calculator"),
            ["abacus", ARROW_TOKEN, "mechanical", "calculator"]
        );
        assert_eq!(
            toks("MP3 player→mp4 player"),
            ["mp3", "player", ARROW_TOKEN, "mp4", "player"]
        );
    }

    #[test]
    fn empty_and_punctuation_only() {
        assert!(toks("").is_empty());
        assert!(toks(" ,.!? ").is_empty());
    }

    #[test]
    fn ascii_arrows() {
        assert_eq!(toks("a->b-->c"), ["a", ARROW_TOKEN, "b", ARROW_TOKEN, "c"]);
        assert_eq!(toks("self-driving"), ["self", "driving"]);
        assert_eq!(toks("Ipods/Wired"), ["ipods", "wired"]);
    }
}
