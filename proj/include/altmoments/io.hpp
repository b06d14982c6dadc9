#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "altmoments/composition.hpp"
#include "altmoments/compstruct.hpp"
#include "altmoments/errors.hpp"
#include "altmoments/gof.hpp"
#include "altmoments/measure.hpp"
#include "altmoments/momentrep.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/seqcalc.hpp"
#include "altmoments/sequence.hpp"
#include "altmoments/subord.hpp"

/*!
 * \file io.hpp
 * JSON and CSV encodings.
 *
 * Exact values travel as strings "p/q" in lowest terms ("p" for integers).
 * Decoding errors carry the JSON pointer of the offending value so callers
 * can map them back to a line and column with \c locate_pointer.
 */

namespace altmoments
{
using json = nlohmann::json;

//! A decoding failure at a known place in the document.
class DecodeError : public InvalidInput
{
  public:
    DecodeError(std::string const& what, std::string pointer)
        : InvalidInput(what), pointer_(std::move(pointer))
    {
    }

    std::string const& pointer() const { return pointer_; }

  private:
    std::string pointer_;
};

//---------------------------------------------------------------------------//
// Encoding
//---------------------------------------------------------------------------//
inline json encode(Rational const& r)
{
    return to_string(r);
}

inline json encode(FiniteSequence const& c)
{
    json out = json::array();
    for (auto const& v : c)
        out.push_back(to_string(v));
    return out;
}

inline json encode(DepthCertificate const& cert)
{
    json out{{"verdict", to_string(cert.verdict)}, {"depth", cert.depth}};
    if (cert.witness)
    {
        out["witness"] = {
            {"j", cert.witness->j}, {"n", cert.witness->n}, {"value", to_string(cert.witness->value)}};
    }
    return out;
}

inline json encode(DiscreteMeasure const& nu)
{
    json atoms = json::array();
    for (auto const& [x, w] : nu.atoms())
        atoms.push_back({{"x", to_string(x)}, {"w", to_string(w)}});
    return {{"atoms", std::move(atoms)}};
}

inline json encode(LaplaceExponentData const& data)
{
    return {{"drift", to_string(data.drift())}, {"nutilde", encode(data.nutilde())}};
}

inline json encode(Composition const& lambda)
{
    return lambda.parts();
}

//! Entries are listed in lexicographic order of the parts.
inline json encode(CompositionDistribution const& dist)
{
    json pmf = json::array();
    for (auto const& [lambda, p] : dist.probabilities())
        pmf.push_back({{"parts", lambda.parts()}, {"p", to_string(p)}});
    return {{"n", dist.n()}, {"pmf", std::move(pmf)}};
}

inline json encode(QRow const& row)
{
    json q = json::array();
    for (auto const& v : row.q)
        q.push_back(to_string(v));
    return {{"n", row.n}, {"q", std::move(q)}};
}

inline json encode(ChiSquareReport const& report)
{
    json out{{"dof", report.dof}, {"pvalue", report.pvalue}};
    // JSON has no infinity; an impossible observation is reported as null.
    if (std::isfinite(report.statistic))
        out["statistic"] = report.statistic;
    else
        out["statistic"] = nullptr;
    return out;
}

//---------------------------------------------------------------------------//
// Decoding
//---------------------------------------------------------------------------//
inline Rational decode_rational(json const& j, std::string const& pointer)
{
    if (!j.is_string())
        throw DecodeError("expected a rational string \"p/q\" at " + pointer, pointer);
    try
    {
        return parse_rational(j.get<std::string>());
    }
    catch (InvalidInput const& e)
    {
        throw DecodeError(std::string(e.what()) + " at " + pointer, pointer);
    }
}

inline FiniteSequence decode_sequence(json const& j, std::string const& pointer = "")
{
    if (!j.is_array() || j.empty())
        throw DecodeError("expected a non-empty array of rationals at " + (pointer.empty() ? "/" : pointer),
                          pointer);
    std::vector<Rational> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        values.push_back(decode_rational(j[i], pointer + "/" + std::to_string(i)));
    return FiniteSequence(std::move(values));
}

inline std::vector<Rational> decode_rational_list(json const& j, std::string const& pointer = "")
{
    if (!j.is_array())
        throw DecodeError("expected an array of rationals", pointer);
    std::vector<Rational> values;
    for (std::size_t i = 0; i < j.size(); ++i)
        values.push_back(decode_rational(j[i], pointer + "/" + std::to_string(i)));
    return values;
}

inline DiscreteMeasure decode_measure(json const& j, std::string const& pointer = "")
{
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw DecodeError("expected {\"atoms\": [...]} at " + (pointer.empty() ? "/" : pointer), pointer);
    auto const& atoms = j["atoms"];
    std::vector<Atom> parsed;
    for (std::size_t i = 0; i < atoms.size(); ++i)
    {
        auto const where = pointer + "/atoms/" + std::to_string(i);
        auto const& a = atoms[i];
        if (!a.is_object() || !a.contains("x") || !a.contains("w"))
            throw DecodeError("atom must be {\"x\": \"p/q\", \"w\": \"p/q\"} at " + where, where);
        parsed.push_back({decode_rational(a["x"], where + "/x"), decode_rational(a["w"], where + "/w")});
    }
    try
    {
        return DiscreteMeasure(std::move(parsed));
    }
    catch (InvalidInput const& e)
    {
        throw DecodeError(e.what(), pointer + "/atoms");
    }
}

enum class MeasureScale
{
    nu,
    nutilde
};

/*!
 * Decode {"drift": "p/q", "nutilde": {...}} or, in the nu scale,
 * {"drift": "p/q", "nu": {...}}. A missing drift is zero.
 */
inline LaplaceExponentData decode_laplace_data(json const& j, MeasureScale scale = MeasureScale::nutilde)
{
    if (!j.is_object())
        throw DecodeError("expected a Laplace exponent object", "");
    Rational drift{0};
    if (j.contains("drift"))
        drift = decode_rational(j["drift"], "/drift");
    char const* key = scale == MeasureScale::nu ? "nu" : "nutilde";
    DiscreteMeasure measure;
    if (j.contains(key))
        measure = decode_measure(j[key], std::string("/") + key);
    try
    {
        if (scale == MeasureScale::nu)
            return from_nu_scale(std::move(drift), measure);
        return LaplaceExponentData(std::move(drift), std::move(measure));
    }
    catch (InvalidInput const& e)
    {
        throw DecodeError(e.what(), std::string("/") + key);
    }
}

//! Decode {"n": n, "pmf": [{"parts": [...], "p": "p/q"}, ...]}.
inline CompositionDistribution decode_distribution(json const& j, std::string const& pointer = "")
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned() || !j.contains("pmf")
        || !j["pmf"].is_array())
    {
        throw DecodeError("expected {\"n\": n, \"pmf\": [...]} at " + (pointer.empty() ? "/" : pointer),
                          pointer);
    }
    CompositionDistribution::map_type probabilities;
    auto const& pmf = j["pmf"];
    for (std::size_t i = 0; i < pmf.size(); ++i)
    {
        auto const where = pointer + "/pmf/" + std::to_string(i);
        auto const& entry = pmf[i];
        if (!entry.is_object() || !entry.contains("parts") || !entry.contains("p") || !entry["parts"].is_array())
            throw DecodeError("pmf entry must be {\"parts\": [...], \"p\": \"p/q\"} at " + where, where);
        std::vector<std::size_t> parts;
        for (auto const& part : entry["parts"])
        {
            if (!part.is_number_unsigned())
                throw DecodeError("parts must be positive integers at " + where + "/parts", where + "/parts");
            parts.push_back(part.get<std::size_t>());
        }
        std::optional<Composition> lambda;
        try
        {
            lambda.emplace(std::move(parts));
        }
        catch (InvalidInput const& e)
        {
            throw DecodeError(std::string(e.what()) + " at " + where + "/parts", where + "/parts");
        }
        auto p = decode_rational(entry["p"], where + "/p");
        if (!probabilities.emplace(*lambda, std::move(p)).second)
            throw DecodeError("duplicate composition " + lambda->str() + " at " + where, where);
    }
    try
    {
        return CompositionDistribution(j["n"].get<std::size_t>(), std::move(probabilities));
    }
    catch (InvalidInput const& e)
    {
        throw DecodeError(e.what(), pointer.empty() ? "" : pointer);
    }
}

//---------------------------------------------------------------------------//
// Source locations
//---------------------------------------------------------------------------//
struct SourceLocation
{
    std::size_t line{1};
    std::size_t column{1};
};

namespace detail
{
/*!
 * Minimal walker over well-formed JSON text that records where the value
 * addressed by a JSON pointer starts.
 */
class PointerLocator
{
  public:
    PointerLocator(std::string_view text, std::vector<std::string> target)
        : text_(text), target_(std::move(target))
    {
    }

    std::optional<SourceLocation> run()
    {
        skip_ws();
        value();
        return found_;
    }

  private:
    SourceLocation here() const
    {
        SourceLocation loc;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
        {
            if (text_[i] == '\n')
            {
                ++loc.line;
                loc.column = 1;
            }
            else
            {
                ++loc.column;
            }
        }
        return loc;
    }

    void skip_ws()
    {
        while (pos_ < text_.size()
               && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' || text_[pos_] == '\r'))
            ++pos_;
    }

    std::string string_literal()
    {
        std::string out;
        ++pos_;  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"')
        {
            if (text_[pos_] == '\\')
                ++pos_;
            if (pos_ < text_.size())
                out += text_[pos_++];
        }
        ++pos_;  // closing quote
        return out;
    }

    void value()
    {
        if (!found_ && path_ == target_)
            found_ = here();
        if (pos_ >= text_.size())
            return;
        char const ch = text_[pos_];
        if (ch == '{')
        {
            ++pos_;
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] != '}')
            {
                auto key = string_literal();
                skip_ws();
                ++pos_;  // ':'
                skip_ws();
                path_.push_back(std::move(key));
                value();
                path_.pop_back();
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',')
                {
                    ++pos_;
                    skip_ws();
                }
            }
            ++pos_;
        }
        else if (ch == '[')
        {
            ++pos_;
            skip_ws();
            for (std::size_t i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i)
            {
                path_.push_back(std::to_string(i));
                value();
                path_.pop_back();
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',')
                {
                    ++pos_;
                    skip_ws();
                }
            }
            ++pos_;
        }
        else if (ch == '"')
        {
            string_literal();
        }
        else
        {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '}'
                   && text_[pos_] != ' ' && text_[pos_] != '\n' && text_[pos_] != '\t'
                   && text_[pos_] != '\r')
                ++pos_;
        }
    }

    std::string_view text_;
    std::vector<std::string> target_;
    std::vector<std::string> path_;
    std::size_t pos_{0};
    std::optional<SourceLocation> found_;
};
}  // namespace detail

/*!
 * Line and column (1-based) where the value at \p pointer starts in
 * \p text, which must be valid JSON. Escaped pointer tokens are not
 * supported; keys used by this library never need escaping.
 */
inline std::optional<SourceLocation> locate_pointer(std::string_view text, std::string const& pointer)
{
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start < pointer.size())
    {
        auto const slash = pointer.find('/', start + 1);
        tokens.push_back(pointer.substr(start + 1, slash == std::string::npos ? std::string::npos
                                                                              : slash - start - 1));
        if (slash == std::string::npos)
            break;
        start = slash;
    }
    return detail::PointerLocator(text, std::move(tokens)).run();
}

//---------------------------------------------------------------------------//
// CSV
//---------------------------------------------------------------------------//
//! Decimal rendering to 12 significant digits.
inline std::string decimal12(double x)
{
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

inline std::string reconstruction_csv(std::vector<CdfStep> const& steps)
{
    std::string out = "x,F\n";
    for (auto const& s : steps)
        out += decimal12(to_double(s.x)) + "," + decimal12(to_double(s.cumulative)) + "\n";
    return out;
}

inline std::string composition_csv_line(Composition const& lambda)
{
    std::string out;
    for (std::size_t i = 0; i < lambda.size(); ++i)
    {
        if (i > 0)
            out += ",";
        out += std::to_string(lambda[i]);
    }
    return out;
}

}  // namespace altmoments
