#pragma once

// File formats: point clouds (XYZ, CSV, ASCII PLY), legacy VTK structured
// points for fields, OBJ for zero sets, CSV energy histories, JSON reports.

#include "lsr/contour.hpp"
#include "lsr/grid.hpp"
#include "lsr/point_cloud.hpp"
#include "lsr/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lsr {

enum class CloudFormat { xyz, csv, ply_ascii };

CloudFormat parse_cloud_format(const std::string& name);
// By extension: .csv, .ply, anything else is xyz.
CloudFormat cloud_format_for(const std::string& path);

// Parse errors carry the 1-based line number.
PointCloud parse_point_cloud(std::istream& in, CloudFormat format);
PointCloud read_point_cloud(const std::string& path, CloudFormat format);
PointCloud read_point_cloud(const std::string& path);

void write_point_cloud(std::ostream& out, const PointCloud& cloud, CloudFormat format);
void write_point_cloud(const std::string& path, const PointCloud& cloud, CloudFormat format);

// Legacy VTK ASCII STRUCTURED_POINTS, unit spacing, origin 0. 2D grids are
// written with a third extent of 1. Values are printed with 17 significant
// digits so read_field reproduces them exactly.
void write_field(std::ostream& out, const ScalarField& field, const std::string& name = "phi");
void write_field(const std::string& path, const ScalarField& field,
                 const std::string& name = "phi");
void write_field(const std::string& path, const Field<bool>& mask,
                 const std::string& name = "mask");
ScalarField read_field(std::istream& in);
ScalarField read_field(const std::string& path);

// "v x y z" lines, then "l a b" (2D) or "f a b c" (3D), 1-based.
void write_obj(std::ostream& out, const ZeroSet& z);
void write_obj(const std::string& path, const ZeroSet& z);

void write_history_csv(const std::string& path, const std::vector<double>& history);

void write_report_json(std::ostream& out, const RunReport& report);
void write_report_json(const std::string& path, const RunReport& report);

}  // namespace lsr
