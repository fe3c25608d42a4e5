#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace subreg {

// The 16 language classes, in the fixed reporting order.  PLT and TPLT are
// the piecewise-local classes sometimes spelled LP/TLP elsewhere.
enum class ClassLabel {
    SL,
    coSL,
    TSL,
    TcoSL,
    SP,
    coSP,
    LT,
    TLT,
    PT,
    PLT,
    TPLT,
    LTT,
    TLTT,
    SF,
    Zp,
    Reg,
};

inline constexpr std::size_t kNumClasses = 16;

inline constexpr std::array<ClassLabel, kNumClasses> kAllClasses = {
    ClassLabel::SL,  ClassLabel::coSL, ClassLabel::TSL, ClassLabel::TcoSL,
    ClassLabel::SP,  ClassLabel::coSP, ClassLabel::LT,  ClassLabel::TLT,
    ClassLabel::PT,  ClassLabel::PLT,  ClassLabel::TPLT, ClassLabel::LTT,
    ClassLabel::TLTT, ClassLabel::SF,  ClassLabel::Zp,  ClassLabel::Reg,
};

inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "SL", "coSL", "TSL", "TcoSL", "SP", "coSP", "LT", "TLT",
    "PT", "PLT", "TPLT", "LTT", "TLTT", "SF", "Zp", "Reg",
};

inline constexpr std::string_view class_name(ClassLabel c) {
    return kClassNames[static_cast<std::size_t>(c)];
}

inline std::optional<ClassLabel> class_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNumClasses; ++i)
        if (kClassNames[i] == name) return kAllClasses[i];
    return std::nullopt;
}

}  // namespace subreg
