#pragma once

#include <string>
#include <string_view>

namespace semcloud {

/// English Porter2 (Snowball) stemmer. Input is expected lowercase; words of
/// two letters or fewer are returned unchanged. The irregular-forms table is
/// extended with the -anation/-amation family so that nouns such as
/// "explanation" share the stem of their verb ("explain").
std::string stem(std::string_view word);

}  // namespace semcloud
