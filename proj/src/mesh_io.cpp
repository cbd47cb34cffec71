#include <cmath>

#include "mhs/errors.hpp"
#include "mhs/fem.hpp"

namespace mhs {
namespace {

// Unit vector orthogonal to the three rows, oriented so that (rows, result) is
// positively oriented in R^4 (cofactor expansion).
Eigen::Vector4d complement(const Eigen::Matrix<double, 3, 4>& rows) {
  Eigen::Vector4d out;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix3d minor;
    int col = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      minor.col(col++) = rows.col(j);
    }
    out[i] = ((i + 3) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
  }
  return out.normalized();
}

}  // namespace

nlohmann::json mesh_to_json(const SurfaceMesh& mesh) {
  nlohmann::json vertices = nlohmann::json::array(), triangles = nlohmann::json::array(),
                 normals = nlohmann::json::array(), asq = nlohmann::json::array();
  for (Eigen::Index i = 0; i < mesh.vertex_count(); ++i) {
    vertices.push_back({mesh.vertices(0, i), mesh.vertices(1, i), mesh.vertices(2, i), mesh.vertices(3, i)});
    normals.push_back(
        {mesh.vertex_normals(0, i), mesh.vertex_normals(1, i), mesh.vertex_normals(2, i), mesh.vertex_normals(3, i)});
    asq.push_back(mesh.vertex_Asq[i]);
  }
  for (Eigen::Index f = 0; f < mesh.triangle_count(); ++f)
    triangles.push_back({mesh.triangles(0, f), mesh.triangles(1, f), mesh.triangles(2, f)});
  nlohmann::json doc = {{"vertices", std::move(vertices)},
                        {"triangles", std::move(triangles)},
                        {"fields", {{"Asq", std::move(asq)}, {"normals", std::move(normals)}}}};
  if (mesh.source_family) doc["source"] = {{"family", *mesh.source_family}, {"parameters", mesh.source_parameters}};
  return doc;
}

SurfaceMesh mesh_from_json(const nlohmann::json& doc) {
  try {
    const auto& jv = doc.at("vertices");
    const auto& jt = doc.at("triangles");
    const Eigen::Index nv = static_cast<Eigen::Index>(jv.size()), nt = static_cast<Eigen::Index>(jt.size());
    if (nv < 3 || nt < 1) throw Error(ErrorKind::Io, "mesh has no triangles");

    SurfaceMesh mesh;
    mesh.surface_dim = 2;
    mesh.vertices.resize(4, nv);
    for (Eigen::Index i = 0; i < nv; ++i) {
      if (jv[i].size() != 4) throw Error(ErrorKind::Io, "vertices must have 4 coordinates");
      for (int c = 0; c < 4; ++c) mesh.vertices(c, i) = jv[i][c].get<double>();
      const double norm = mesh.vertices.col(i).norm();
      if (std::abs(norm - 1.0) > 1e-6) throw Error(ErrorKind::Io, "vertex " + std::to_string(i) + " is not on S^3");
      mesh.vertices.col(i) /= norm;
    }
    mesh.triangles.resize(3, nt);
    for (Eigen::Index f = 0; f < nt; ++f) {
      if (jt[f].size() != 3) throw Error(ErrorKind::Io, "triangles must have 3 indices");
      for (int c = 0; c < 3; ++c) {
        const auto id = jt[f][c].get<long long>();
        if (id < 0 || id >= nv) throw Error(ErrorKind::Io, "triangle index out of range");
        mesh.triangles(c, f) = static_cast<int>(id);
      }
    }

    const nlohmann::json fields = doc.value("fields", nlohmann::json::object());
    if (doc.contains("source")) {
      mesh.source_family = doc["source"].value("family", std::string());
      mesh.source_parameters = doc["source"].value("parameters", nlohmann::json::object());
    }
    if (fields.contains("Asq")) {
      const auto& ja = fields["Asq"];
      if (static_cast<Eigen::Index>(ja.size()) != nv) throw Error(ErrorKind::Io, "Asq field size mismatch");
      mesh.vertex_Asq.resize(nv);
      for (Eigen::Index i = 0; i < nv; ++i) mesh.vertex_Asq[i] = ja[i].get<double>();
    } else if (mesh.source_family == "clifford" && mesh.source_parameters.contains("n")) {
      mesh.vertex_Asq = Vec::Constant(nv, mesh.source_parameters["n"].get<double>());
    } else if (mesh.source_family == "equator") {
      mesh.vertex_Asq = Vec::Zero(nv);
    } else {
      throw Error(ErrorKind::Io, "mesh without a source family must carry fields.Asq");
    }

    // per-triangle normals from the winding, used for both modes below
    Mat face_normals(4, nt);
    Vec face_area(nt);
    for (Eigen::Index f = 0; f < nt; ++f) {
      const auto tri = mesh.triangles.col(f);
      const Vec p0 = mesh.vertices.col(tri[0]), p1 = mesh.vertices.col(tri[1]), p2 = mesh.vertices.col(tri[2]);
      Eigen::Matrix<double, 3, 4> rows;
      rows.row(0) = ((p0 + p1 + p2) / 3.0).normalized().transpose();
      rows.row(1) = (p1 - p0).transpose();
      rows.row(2) = (p2 - p0).transpose();
      face_normals.col(f) = complement(rows);
      const double a = (p1 - p0).squaredNorm(), b = (p1 - p0).dot(p2 - p0), c = (p2 - p0).squaredNorm();
      face_area[f] = 0.5 * std::sqrt(std::max(0.0, a * c - b * b));
    }

    mesh.vertex_normals = Mat::Zero(4, nv);
    mesh.analytic_normals = fields.contains("normals");
    if (mesh.analytic_normals) {
      const auto& jn = fields["normals"];
      if (static_cast<Eigen::Index>(jn.size()) != nv) throw Error(ErrorKind::Io, "normals field size mismatch");
      for (Eigen::Index i = 0; i < nv; ++i)
        for (int c = 0; c < 4; ++c) mesh.vertex_normals(c, i) = jn[i][c].get<double>();
    } else {
      for (Eigen::Index f = 0; f < nt; ++f)
        for (int c = 0; c < 3; ++c) mesh.vertex_normals.col(mesh.triangles(c, f)) += face_area[f] * face_normals.col(f);
    }
    for (Eigen::Index i = 0; i < nv; ++i) {
      Vec nu = mesh.vertex_normals.col(i);
      nu -= nu.dot(mesh.vertices.col(i)) * mesh.vertices.col(i);
      if (nu.norm() < 1e-12) throw Error(ErrorKind::Io, "cannot determine a normal at vertex " + std::to_string(i));
      mesh.vertex_normals.col(i) = nu.normalized();
    }

    const Eigen::Index nq = TriangleRule::kPoints * nt;
    mesh.quad_weights.resize(nq);
    mesh.quad_positions.resize(4, nq);
    mesh.quad_normals.resize(4, nq);
    mesh.quad_Asq.resize(nq);
    for (Eigen::Index f = 0; f < nt; ++f) {
      for (int q = 0; q < TriangleRule::kPoints; ++q) {
        const auto& bary = TriangleRule::kBarycentric[q];
        Vec x = Vec::Zero(4), nu = Vec::Zero(4);
        double asq = 0.0;
        for (int c = 0; c < 3; ++c) {
          const int v = mesh.triangles(c, f);
          x += bary[c] * mesh.vertices.col(v);
          nu += bary[c] * mesh.vertex_normals.col(v);
          asq += bary[c] * mesh.vertex_Asq[v];
        }
        x.normalize();
        if (!mesh.analytic_normals) nu = face_normals.col(f);
        nu -= nu.dot(x) * x;
        const Eigen::Index k = TriangleRule::kPoints * f + q;
        mesh.quad_weights[k] = face_area[f] / TriangleRule::kPoints;
        mesh.quad_positions.col(k) = x;
        mesh.quad_normals.col(k) = nu.normalized();
        mesh.quad_Asq[k] = asq;
      }
    }
    return mesh;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed mesh JSON: ") + e.what());
  }
}

}  // namespace mhs
