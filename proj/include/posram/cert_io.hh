#pragma once

#include <posram/certificates.hh>

#include <iosfwd>
#include <string>

namespace posram
{
    /// Line-oriented certificate text. The first line is "CERT <type> N=<n>";
    /// the rest depends on the type:
    ///   xgood:      "X <hex>", "COLOR red|blue|none", one "V <hex>" per subset
    ///               of X in compressed-index order
    ///   chain:      "X <hex>", "ORD <labels>", one "V <hex>" per chain vertex
    ///   shrub:      "Y <hex>", "KIND full|weak", "COLOR ...", one "V <hex>" per
    ///               factorial tree node in tree order
    ///   pattern:    "COLOR red|blue", "PATTERN <m>", "LT <a> <b>" per cover
    ///               pair, "MAP <element> <hex>" per pattern element
    ///   frameworks: "K <k>", "B <block>", "F <Y> <A> <X>" per framework
    /// Hex vertices use ceil(N/4) digits. Throws FormatError on bad input.
    auto write_certificate(std::ostream & out, const Certificate & cert) -> void;
    auto read_certificate(std::istream & in) -> Certificate;

    auto certificate_to_text(const Certificate & cert) -> std::string;
    auto certificate_from_text(const std::string & text) -> Certificate;

    auto save_certificate(const std::string & path, const Certificate & cert) -> void;
    auto load_certificate(const std::string & path) -> Certificate;
}
