package app.ui;

import javax.swing.JButton;
import javax.swing.JList;
import javax.swing.event.ListSelectionEvent;
import javax.swing.event.ListSelectionListener;

public class ThemeList implements ListSelectionListener {
    private JList themes;
    private JButton apply;

    public void valueChanged(ListSelectionEvent e) {
        if (!e.getValueIsAdjusting()) {
            int index = themes.getSelectedIndex();
            if (index == -1) {
                apply.setEnabled(false);
            } else if (index == 0) {
                apply.setEnabled(true);
            } else {
                apply.setEnabled(themes.isEnabled());
            }
        }
    }
}
