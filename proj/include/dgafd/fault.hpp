#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace dgafd {

/// The six transformer fault classes: partial discharge, low/high energy
/// discharge, and the three thermal ranges (<300 C, 300-700 C, >700 C).
enum class FaultClass : int { PD = 0, D1 = 1, D2 = 2, T1 = 3, T2 = 4, T3 = 5 };

enum class SuperClass : int { Discharge = 0, Thermal = 1 };

inline constexpr int kNumFaultClasses = 6;

inline constexpr std::array<FaultClass, kNumFaultClasses> kAllFaultClasses = {
    FaultClass::PD, FaultClass::D1, FaultClass::D2,
    FaultClass::T1, FaultClass::T2, FaultClass::T3};

constexpr int index_of(FaultClass c) noexcept { return static_cast<int>(c); }

constexpr FaultClass fault_from_index(int i) { return static_cast<FaultClass>(i); }

constexpr SuperClass super_class_of(FaultClass c) noexcept {
    return index_of(c) < 3 ? SuperClass::Discharge : SuperClass::Thermal;
}

/// Position of a class within its superclass (PD,D1,D2 -> 0,1,2; T1,T2,T3 -> 0,1,2).
constexpr int branch_index_of(FaultClass c) noexcept { return index_of(c) % 3; }

constexpr FaultClass fault_from_branch(SuperClass s, int branch_index) {
    return static_cast<FaultClass>(static_cast<int>(s) * 3 + branch_index);
}

constexpr std::string_view to_string(FaultClass c) noexcept {
    constexpr std::array<std::string_view, kNumFaultClasses> names = {"PD", "D1", "D2",
                                                                      "T1", "T2", "T3"};
    return names[static_cast<std::size_t>(index_of(c))];
}

constexpr std::string_view to_string(SuperClass s) noexcept {
    return s == SuperClass::Discharge ? std::string_view{"Discharge"} : std::string_view{"Thermal"};
}

/// Case-insensitive parse of a fault label; nullopt when the text is not one
/// of the six labels.
inline std::optional<FaultClass> parse_fault_class(std::string_view text) noexcept {
    auto upper = [](char ch) { return ch >= 'a' && ch <= 'z' ? char(ch - 'a' + 'A') : ch; };
    if (text.size() != 2) return std::nullopt;
    const char a = upper(text[0]);
    const char b = upper(text[1]);
    if (a == 'P' && b == 'D') return FaultClass::PD;
    if (a == 'D' && b == '1') return FaultClass::D1;
    if (a == 'D' && b == '2') return FaultClass::D2;
    if (a == 'T' && b == '1') return FaultClass::T1;
    if (a == 'T' && b == '2') return FaultClass::T2;
    if (a == 'T' && b == '3') return FaultClass::T3;
    return std::nullopt;
}

}  // namespace dgafd
