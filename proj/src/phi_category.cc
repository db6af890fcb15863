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
#include "phirisk/phi_category.h"

namespace phirisk {
namespace {

constexpr std::array<std::string_view, kNumPhiCategories> kCategoryNames = {
    "EMAIL",      "FAX",           "DEVICE", "LOCATION-OTHER", "ORGANIZATION",
    "USERNAME",   "COUNTRY",       "STREET", "ZIP",            "PROFESSION",
    "STATE",      "IDNUM",         "PHONE",  "CITY",           "MEDICALRECORD",
    "AGE",        "HOSPITAL",      "PATIENT", "DOCTOR",        "DATE",
};

constexpr std::array<std::string_view, 8> kParentNames = {
    "AGE", "CONTACT", "DATE", "LOCATION", "PROFESSION", "ID", "NAME", "UNNAMED",
};

}  // namespace

std::string_view category_name(PhiCategory category) {
  return kCategoryNames[category_index(category)];
}

std::optional<PhiCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return kAllPhiCategories[i];
  }
  return std::nullopt;
}

std::string_view parent_name(PhiParent parent) {
  return kParentNames[static_cast<std::size_t>(parent)];
}

std::optional<PhiParent> parse_parent(std::string_view name) {
  // The placeholder slot is not a real element name.
  for (std::size_t i = 0; i + 1 < kParentNames.size(); ++i) {
    if (kParentNames[i] == name) return static_cast<PhiParent>(i);
  }
  return std::nullopt;
}

PhiParent parent_of(PhiCategory category) {
  switch (category) {
    case PhiCategory::kAge:
      return PhiParent::kAge;
    case PhiCategory::kEmail:
    case PhiCategory::kFax:
    case PhiCategory::kPhone:
      return PhiParent::kContact;
    case PhiCategory::kDate:
      return PhiParent::kDate;
    case PhiCategory::kLocationOther:
    case PhiCategory::kOrganization:
    case PhiCategory::kCountry:
    case PhiCategory::kStreet:
    case PhiCategory::kZip:
    case PhiCategory::kState:
    case PhiCategory::kCity:
    case PhiCategory::kHospital:
      return PhiParent::kLocation;
    case PhiCategory::kProfession:
      return PhiParent::kProfession;
    case PhiCategory::kDevice:
    case PhiCategory::kIdNum:
    case PhiCategory::kMedicalRecord:
      return PhiParent::kId;
    case PhiCategory::kUsername:
    case PhiCategory::kPatient:
    case PhiCategory::kDoctor:
      return PhiParent::kName;
  }
  return PhiParent::kUnnamed;
}

}  // namespace phirisk
