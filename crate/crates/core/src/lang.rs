//! Small English inflection helpers for question and title text.

const IRREGULAR: &[(&str, &str)] = &[
    ("person", "people"),
    ("child", "children"),
    ("man", "men"),
    ("woman", "women"),
    ("foot", "feet"),
    ("tooth", "teeth"),
    ("mouse", "mice"),
    ("series", "series"),
    ("species", "species"),
];

/// Pluralizes the final word of a label: "Country" -> "Countries",
/// "Age Group" -> "Age Groups", "Person" -> "People".
pub fn pluralize(label: &str) -> String {
    let (head, word) = match label.rfind(' ') {
        Some(i) => (&label[..=i], &label[i + 1..]),
        None => ("", label),
    };
    format!("{head}{}", pluralize_word(word))
}

fn pluralize_word(word: &str) -> String {
    let lower = word.to_lowercase();
    for (sing, plur) in IRREGULAR {
        if lower == *sing {
            return match_case(word, plur);
        }
    }
    let ends = |s: &str| lower.ends_with(s);
    if ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh") {
        return format!("{word}es");
    }
    if let Some(stripped) = word.strip_suffix('y') {
        let before = stripped.chars().last().unwrap_or(' ');
        if !"aeiouAEIOU".contains(before) && !stripped.is_empty() {
            return format!("{stripped}ies");
        }
    }
    if ends("fe") {
        return format!("{}ves", &word[..word.len() - 2]);
    }
    if ends("f") && !ends("ff") {
        return format!("{}ves", &word[..word.len() - 1]);
    }
    format!("{word}s")
}

/// Copies the leading-capital pattern of `like` onto `word`.
fn match_case(like: &str, word: &str) -> String {
    if like.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = word.chars();
        match chars.next() {
            Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
            None => String::new(),
        }
    } else {
        word.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::pluralize;

    #[test]
    fn regular_and_irregular_forms() {
        assert_eq!(pluralize("Country"), "Countries");
        assert_eq!(pluralize("Month"), "Months");
        assert_eq!(pluralize("Branch"), "Branches");
        assert_eq!(pluralize("Company"), "Companies");
        assert_eq!(pluralize("Person"), "People");
        assert_eq!(pluralize("Age Group"), "Age Groups");
        assert_eq!(pluralize("Day"), "Days");
        assert_eq!(pluralize("Box"), "Boxes");
        assert_eq!(pluralize("Shelf"), "Shelves");
    }
}
