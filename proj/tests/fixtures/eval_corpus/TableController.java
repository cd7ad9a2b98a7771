package app.ui;

import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;

class RowModel {
    boolean isDirty() { return false; }
}

public class TableController implements ActionListener {
    private RowModel model;

    public void actionPerformed(ActionEvent e) {
        if (model.isDirty()) {
            store.flush(model);
        }
    }
}
