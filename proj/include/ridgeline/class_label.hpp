#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ridgeline {

/// Galton's three global pattern classes. The fixed order Arch < Loop < Whorl
/// is the deterministic tie-break order used everywhere downstream.
enum class ClassLabel : int { Arch = 0, Loop = 1, Whorl = 2 };

inline constexpr int kNumClasses = 3;
inline constexpr std::array<ClassLabel, 3> kAllClasses = {ClassLabel::Arch, ClassLabel::Loop,
                                                          ClassLabel::Whorl};

constexpr std::string_view class_name(ClassLabel c) {
    switch (c) {
    case ClassLabel::Arch: return "arch";
    case ClassLabel::Loop: return "loop";
    case ClassLabel::Whorl: return "whorl";
    }
    return "?";
}

/// Single-letter manifest token (A/L/W).
constexpr char class_token(ClassLabel c) {
    switch (c) {
    case ClassLabel::Arch: return 'A';
    case ClassLabel::Loop: return 'L';
    case ClassLabel::Whorl: return 'W';
    }
    return '?';
}

constexpr std::optional<ClassLabel> class_from_token(char t) {
    switch (t) {
    case 'A': return ClassLabel::Arch;
    case 'L': return ClassLabel::Loop;
    case 'W': return ClassLabel::Whorl;
    default: return std::nullopt;
    }
}

}  // namespace ridgeline
