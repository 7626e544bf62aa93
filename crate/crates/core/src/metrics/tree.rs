use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::Dataset;

/// A folder in the path hierarchy. The root has an empty name and path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolderNode {
    pub name: String,
    pub path: String,
    pub depth: usize,
    pub parent: Option<usize>,
    /// Child folder indices, sorted by name.
    pub children: Vec<usize>,
    /// Full paths of the files directly inside this folder, sorted.
    pub files: Vec<String>,
}

/// Folder hierarchy over every path in a dataset. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolderTree {
    nodes: Vec<FolderNode>,
    by_path: BTreeMap<String, usize>,
    file_folder: BTreeMap<String, usize>,
}

pub const ROOT: usize = 0;

impl FolderTree {
    /// Builds the hierarchy from full file paths.
    pub fn from_paths<'a>(paths: impl IntoIterator<Item = &'a str>) -> Self {
        let mut tree = FolderTree {
            nodes: alloc::vec![FolderNode {
                name: String::new(),
                path: String::new(),
                depth: 0,
                parent: None,
                children: Vec::new(),
                files: Vec::new(),
            }],
            by_path: BTreeMap::new(),
            file_folder: BTreeMap::new(),
        };
        tree.by_path.insert(String::new(), ROOT);
        for path in paths {
            let folder = match path.rfind('/') {
                Some(cut) => tree.ensure_folder(&path[..cut]),
                None => ROOT,
            };
            if tree.file_folder.insert(path.into(), folder).is_none() {
                tree.nodes[folder].files.push(path.into());
            }
        }
        for i in 0..tree.nodes.len() {
            let mut children = core::mem::take(&mut tree.nodes[i].children);
            children.sort_by(|&a, &b| tree.nodes[a].name.cmp(&tree.nodes[b].name));
            tree.nodes[i].children = children;
            tree.nodes[i].files.sort();
        }
        tree
    }

    fn ensure_folder(&mut self, path: &str) -> usize {
        if let Some(&i) = self.by_path.get(path) {
            return i;
        }
        let (parent, name) = match path.rfind('/') {
            Some(cut) => (self.ensure_folder(&path[..cut]), &path[cut + 1..]),
            None => (ROOT, path),
        };
        let i = self.nodes.len();
        self.nodes.push(FolderNode {
            name: name.into(),
            path: path.into(),
            depth: self.nodes[parent].depth + 1,
            parent: Some(parent),
            children: Vec::new(),
            files: Vec::new(),
        });
        self.nodes[parent].children.push(i);
        self.by_path.insert(path.into(), i);
        i
    }

    pub fn root(&self) -> &FolderNode {
        &self.nodes[ROOT]
    }

    pub fn node(&self, index: usize) -> &FolderNode {
        &self.nodes[index]
    }

    pub fn nodes(&self) -> &[FolderNode] {
        &self.nodes
    }

    pub fn folder_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn file_count(&self) -> usize {
        self.file_folder.len()
    }

    pub fn folder_index(&self, path: &str) -> Option<usize> {
        self.by_path.get(path).copied()
    }

    /// Index of the folder directly containing `file`.
    pub fn folder_of(&self, file: &str) -> Option<usize> {
        self.file_folder.get(file).copied()
    }

    /// `index` followed by its ancestors up to the root.
    pub fn ancestors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        core::iter::successors(Some(index), move |&i| self.nodes[i].parent)
    }

    /// Folder indices in pre-order, children visited in name order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = alloc::vec![ROOT];
        while let Some(i) = stack.pop() {
            out.push(i);
            stack.extend(self.nodes[i].children.iter().rev());
        }
        out
    }
}

/// Folder hierarchy over every file the dataset ever touched, independent of
/// any filter.
pub fn build_tree(dataset: &Dataset) -> FolderTree {
    FolderTree::from_paths(dataset.paths().iter().map(String::as_str))
}
