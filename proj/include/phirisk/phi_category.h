// Copyright 2026 The phirisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef PHIRISK_PHI_CATEGORY_H_
#define PHIRISK_PHI_CATEGORY_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace phirisk {

// Leaf PHI tag names found in the 2014 de-identification gold standard,
// listed from rarest to most frequent in the test partition.
enum class PhiCategory {
  kEmail,
  kFax,
  kDevice,
  kLocationOther,
  kOrganization,
  kUsername,
  kCountry,
  kStreet,
  kZip,
  kProfession,
  kState,
  kIdNum,
  kPhone,
  kCity,
  kMedicalRecord,
  kAge,
  kHospital,
  kPatient,
  kDoctor,
  kDate,
};

inline constexpr std::size_t kNumPhiCategories = 20;

inline constexpr std::array<PhiCategory, kNumPhiCategories> kAllPhiCategories = {
    PhiCategory::kEmail,         PhiCategory::kFax,
    PhiCategory::kDevice,        PhiCategory::kLocationOther,
    PhiCategory::kOrganization,  PhiCategory::kUsername,
    PhiCategory::kCountry,       PhiCategory::kStreet,
    PhiCategory::kZip,           PhiCategory::kProfession,
    PhiCategory::kState,         PhiCategory::kIdNum,
    PhiCategory::kPhone,         PhiCategory::kCity,
    PhiCategory::kMedicalRecord, PhiCategory::kAge,
    PhiCategory::kHospital,      PhiCategory::kPatient,
    PhiCategory::kDoctor,        PhiCategory::kDate,
};

// Top-level groups of the tag taxonomy. The taxonomy names eight groups but
// only seven are identified; kUnnamed holds the eighth slot and no leaf maps
// to it.
enum class PhiParent {
  kAge,
  kContact,
  kDate,
  kLocation,
  kProfession,
  kId,
  kName,
  kUnnamed,
};

std::string_view category_name(PhiCategory category);
std::optional<PhiCategory> parse_category(std::string_view name);

std::string_view parent_name(PhiParent parent);
std::optional<PhiParent> parse_parent(std::string_view name);

PhiParent parent_of(PhiCategory category);

inline std::size_t category_index(PhiCategory category) {
  return static_cast<std::size_t>(category);
}

}  // namespace phirisk

#endif  // PHIRISK_PHI_CATEGORY_H_
