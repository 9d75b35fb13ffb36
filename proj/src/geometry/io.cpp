#include "polymatch/geometry/io.hpp"

#include <fstream>
#include <sstream>

namespace polymatch {

namespace {

struct LineReader {
    std::istream &in;
    std::string path;
    int line_number = 0;

    // Next non-empty, non-comment line; false on EOF.
    bool next(std::string &line, char comment = '#')
    {
        while (std::getline(in, line)) {
            ++line_number;
            const auto first = line.find_first_not_of(" \t\r\n");
            if (first == std::string::npos || line[first] == comment)
                continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string &message) const
    {
        throw Error(path + ":" + std::to_string(line_number) + ": " + message);
    }
};

struct RawShape {
    Eigen::MatrixX3d vertices;
    Eigen::MatrixX3i faces;
};

RawShape read_off(std::istream &in, const std::string &path)
{
    LineReader reader{in, path};
    std::string line;
    if (!reader.next(line))
        reader.fail("empty OFF file");
    {
        std::istringstream ss(line);
        std::string magic;
        ss >> magic;
        if (magic != "OFF")
            reader.fail("expected OFF header, got '" + line + "'");
    }
    if (!reader.next(line))
        reader.fail("missing OFF count line");
    int n = 0, f = 0, e = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> n >> f >> e))
            reader.fail("malformed OFF count line '" + line + "'");
    }
    if (n <= 0)
        reader.fail("empty geometry (vertex count " + std::to_string(n) + ")");

    RawShape shape;
    shape.vertices.resize(n, 3);
    for (int v = 0; v < n; ++v) {
        if (!reader.next(line))
            reader.fail("unexpected end of file in vertex " +
                        std::to_string(v));
        std::istringstream ss(line);
        if (!(ss >> shape.vertices(v, 0) >> shape.vertices(v, 1) >>
              shape.vertices(v, 2)))
            reader.fail("malformed vertex " + std::to_string(v));
    }
    shape.faces.resize(f, 3);
    for (int k = 0; k < f; ++k) {
        if (!reader.next(line))
            reader.fail("unexpected end of file in face " + std::to_string(k));
        std::istringstream ss(line);
        int count = 0;
        if (!(ss >> count))
            reader.fail("malformed face " + std::to_string(k));
        if (count != 3)
            reader.fail("face " + std::to_string(k) + " has " +
                        std::to_string(count) + " vertices; only triangles");
        if (!(ss >> shape.faces(k, 0) >> shape.faces(k, 1) >>
              shape.faces(k, 2)))
            reader.fail("malformed face " + std::to_string(k));
    }
    return shape;
}

RawShape read_ply(std::istream &in, const std::string &path)
{
    LineReader reader{in, path};
    std::string line;
    if (!reader.next(line, '\0') || line.rfind("ply", 0) != 0)
        reader.fail("expected 'ply' magic");

    int vertex_count = -1, face_count = 0;
    int coord_props[3] = {-1, -1, -1};
    int vertex_props = 0;
    std::string current_element;
    bool in_header = true;
    while (in_header) {
        if (!reader.next(line, '\0'))
            reader.fail("unexpected end of PLY header");
        std::istringstream ss(line);
        std::string keyword;
        ss >> keyword;
        if (keyword == "comment" || keyword == "obj_info")
            continue;
        if (keyword == "format") {
            std::string format;
            ss >> format;
            if (format != "ascii")
                reader.fail("only ASCII PLY is supported, got '" + format +
                            "'");
        } else if (keyword == "element") {
            std::string name;
            int count = 0;
            ss >> name >> count;
            current_element = name;
            if (name == "vertex")
                vertex_count = count;
            else if (name == "face")
                face_count = count;
        } else if (keyword == "property") {
            if (current_element == "vertex") {
                std::string type, name;
                ss >> type >> name;
                if (type == "list")
                    reader.fail("list property on vertex element");
                if (name == "x")
                    coord_props[0] = vertex_props;
                else if (name == "y")
                    coord_props[1] = vertex_props;
                else if (name == "z")
                    coord_props[2] = vertex_props;
                ++vertex_props;
            }
        } else if (keyword == "end_header") {
            in_header = false;
        } else {
            reader.fail("unsupported PLY header keyword '" + keyword + "'");
        }
    }
    if (vertex_count <= 0)
        reader.fail("empty geometry (no vertex element)");
    if (coord_props[0] < 0 || coord_props[1] < 0 || coord_props[2] < 0)
        reader.fail("vertex element lacks x/y/z properties");

    RawShape shape;
    shape.vertices.resize(vertex_count, 3);
    std::vector<double> values(vertex_props);
    for (int v = 0; v < vertex_count; ++v) {
        if (!reader.next(line, '\0'))
            reader.fail("unexpected end of file in vertex " +
                        std::to_string(v));
        std::istringstream ss(line);
        for (int p = 0; p < vertex_props; ++p)
            if (!(ss >> values[p]))
                reader.fail("malformed vertex " + std::to_string(v));
        for (int k = 0; k < 3; ++k)
            shape.vertices(v, k) = values[coord_props[k]];
    }
    shape.faces.resize(face_count, 3);
    for (int k = 0; k < face_count; ++k) {
        if (!reader.next(line, '\0'))
            reader.fail("unexpected end of file in face " + std::to_string(k));
        std::istringstream ss(line);
        int count = 0;
        if (!(ss >> count))
            reader.fail("malformed face " + std::to_string(k));
        if (count != 3)
            reader.fail("face " + std::to_string(k) + " has " +
                        std::to_string(count) + " vertices; only triangles");
        if (!(ss >> shape.faces(k, 0) >> shape.faces(k, 1) >>
              shape.faces(k, 2)))
            reader.fail("malformed face " + std::to_string(k));
    }
    return shape;
}

RawShape read_raw(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");

    std::string ext = path.extension().string();
    for (auto &c : ext)
        c = static_cast<char>(std::tolower(c));
    if (ext == ".off")
        return read_off(in, path.string());
    if (ext == ".ply")
        return read_ply(in, path.string());

    // No recognised extension: sniff the first line.
    std::string first;
    std::getline(in, first);
    in.seekg(0);
    if (first.rfind("ply", 0) == 0)
        return read_ply(in, path.string());
    return read_off(in, path.string());
}

} // namespace

Shape load_shape(const std::filesystem::path &path, ShapeKind kind,
                 int cloud_neighbours)
{
    RawShape raw = read_raw(path);
    if (kind == ShapeKind::Mesh) {
        if (raw.faces.rows() == 0)
            throw Error(path.string() + ": no faces; cannot load as mesh");
        return make_mesh(std::move(raw.vertices), std::move(raw.faces),
                         path.string());
    }
    return make_cloud(std::move(raw.vertices), cloud_neighbours);
}

TriMesh load_mesh(const std::filesystem::path &path)
{
    return std::get<TriMesh>(load_shape(path, ShapeKind::Mesh));
}

PointCloud load_cloud(const std::filesystem::path &path, int cloud_neighbours)
{
    return std::get<PointCloud>(
        load_shape(path, ShapeKind::Cloud, cloud_neighbours));
}

void write_obj(const std::filesystem::path &path, const TriMesh &mesh)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out.precision(17);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        out << "v " << mesh.vertices(v, 0) << ' ' << mesh.vertices(v, 1) << ' '
            << mesh.vertices(v, 2) << '\n';
    for (int f = 0; f < mesh.face_count(); ++f)
        out << "f " << mesh.faces(f, 0) + 1 << ' ' << mesh.faces(f, 1) + 1
            << ' ' << mesh.faces(f, 2) + 1 << '\n';
    if (!out)
        throw Error("write failed for '" + path.string() + "'");
}

} // namespace polymatch
